#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "srp/scene.hpp"
#include "srp/types.hpp"

namespace srp {

using Rgb = std::array<std::uint8_t, 3>;

extern const std::array<Rgb, 20> kPalette;
extern const Rgb kWallColor;
extern const Rgb kFloorColor;

Rgb object_color(int object_index);

struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// Walls dark, objects filled from the palette, target cells outlined with a
// one-pixel rim in the owning object's color. Cell centers stay unambiguous
// for scale >= 3.
Frame render_frame(const SceneInstance& inst, const LayoutState& s, int scale = 8);

void write_ppm(const Frame& frame, const std::string& path);
Frame read_ppm(const std::string& path);

// Uppercase letters for objects, lowercase for uncovered target cells.
std::string ascii_frame(const SceneInstance& inst, const LayoutState& s);

// One frame per visited state (actions.size() + 1 files, frame_NNN.ppm).
// An infeasible action halts with the failing step index in the error.
std::vector<std::string> render_plan(const SceneInstance& inst,
                                     const std::vector<Action>& actions,
                                     const std::string& out_dir, int scale = 8);

}  // namespace srp
