#include "srp/render.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "srp/env.hpp"
#include "srp/errors.hpp"

namespace srp {

const std::array<Rgb, 20> kPalette = {{{31, 119, 180},  {174, 199, 232}, {255, 127, 14},
                                       {255, 187, 120}, {44, 160, 44},   {152, 223, 138},
                                       {214, 39, 40},   {255, 152, 150}, {148, 103, 189},
                                       {197, 176, 213}, {140, 86, 75},   {196, 156, 148},
                                       {227, 119, 194}, {247, 182, 210}, {127, 127, 127},
                                       {199, 199, 199}, {188, 189, 34},  {219, 219, 141},
                                       {23, 190, 207},  {158, 218, 229}}};
const Rgb kWallColor = {40, 40, 40};
const Rgb kFloorColor = {235, 235, 235};

Rgb object_color(int object_index) {
    if (object_index < 0) throw std::invalid_argument("object index must be non-negative");
    return kPalette[object_index % kPalette.size()];
}

namespace {

void put(Frame& frame, int px, int py, Rgb color) {
    const std::size_t at = 3 * (static_cast<std::size_t>(py) * frame.width + px);
    frame.rgb[at] = color[0];
    frame.rgb[at + 1] = color[1];
    frame.rgb[at + 2] = color[2];
}

void fill_cell(Frame& frame, int row, int col, int scale, Rgb color) {
    for (int y = 0; y < scale; ++y) {
        for (int x = 0; x < scale; ++x) {
            put(frame, col * scale + x, row * scale + y, color);
        }
    }
}

void rim_cell(Frame& frame, int row, int col, int scale, Rgb color) {
    for (int i = 0; i < scale; ++i) {
        put(frame, col * scale + i, row * scale, color);
        put(frame, col * scale + i, row * scale + scale - 1, color);
        put(frame, col * scale, row * scale + i, color);
        put(frame, col * scale + scale - 1, row * scale + i, color);
    }
}

}  // namespace

Frame render_frame(const SceneInstance& inst, const LayoutState& s, int scale) {
    if (scale < 1) throw std::invalid_argument("render scale must be positive");
    Frame frame;
    frame.width = inst.grid_size * scale;
    frame.height = inst.grid_size * scale;
    frame.rgb.assign(3 * static_cast<std::size_t>(frame.width) * frame.height, 0);

    for (int r = 0; r < inst.grid_size; ++r) {
        for (int c = 0; c < inst.grid_size; ++c) {
            fill_cell(frame, r, c, scale, inst.impassable(r, c) ? kWallColor : kFloorColor);
        }
    }
    for (int k = 0; k < inst.object_count(); ++k) {
        for (const CellOffset& o : inst.objects[k].mask(s.poses[k].bin)) {
            fill_cell(frame, s.poses[k].row + o.dr, s.poses[k].col + o.dc, scale,
                      object_color(k));
        }
    }
    for (int k = 0; k < inst.object_count(); ++k) {
        const Pose target = inst.target[k];
        for (const CellOffset& o : inst.objects[k].mask(target.bin)) {
            rim_cell(frame, target.row + o.dr, target.col + o.dc, scale, object_color(k));
        }
    }
    return frame;
}

void write_ppm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.rgb.data()),
              static_cast<std::streamsize>(frame.rgb.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

Frame read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string magic;
    int maxval = 0;
    Frame frame;
    in >> magic >> frame.width >> frame.height >> maxval;
    if (magic != "P6" || maxval != 255 || frame.width < 1 || frame.height < 1) {
        throw std::runtime_error("unsupported pixmap in " + path);
    }
    in.get();  // single whitespace byte after the header
    frame.rgb.resize(3 * static_cast<std::size_t>(frame.width) * frame.height);
    in.read(reinterpret_cast<char*>(frame.rgb.data()),
            static_cast<std::streamsize>(frame.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(frame.rgb.size())) {
        throw std::runtime_error("truncated pixmap in " + path);
    }
    return frame;
}

std::string ascii_frame(const SceneInstance& inst, const LayoutState& s) {
    std::vector<std::string> lines(inst.grid_size, std::string(inst.grid_size, '.'));
    for (int r = 0; r < inst.grid_size; ++r) {
        for (int c = 0; c < inst.grid_size; ++c) {
            if (inst.impassable(r, c)) lines[r][c] = '#';
        }
    }
    for (int k = 0; k < inst.object_count(); ++k) {
        const Pose target = inst.target[k];
        for (const CellOffset& o : inst.objects[k].mask(target.bin)) {
            lines[target.row + o.dr][target.col + o.dc] =
                static_cast<char>('a' + k % 26);
        }
    }
    for (int k = 0; k < inst.object_count(); ++k) {
        for (const CellOffset& o : inst.objects[k].mask(s.poses[k].bin)) {
            lines[s.poses[k].row + o.dr][s.poses[k].col + o.dc] =
                static_cast<char>('A' + k % 26);
        }
    }
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::vector<std::string> render_plan(const SceneInstance& inst,
                                     const std::vector<Action>& actions,
                                     const std::string& out_dir, int scale) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> paths;
    LayoutState s = initial_layout(inst);
    char name[32];
    for (std::size_t step = 0; step <= actions.size(); ++step) {
        std::snprintf(name, sizeof name, "frame_%03zu.ppm", step);
        const std::string path = out_dir + "/" + name;
        write_ppm(render_frame(inst, s, scale), path);
        paths.push_back(path);
        if (step == actions.size()) break;
        if (!action_feasible(inst, s, actions[step].object_index, actions[step].move)) {
            throw InfeasibleActionError("render halted: action at step " +
                                        std::to_string(step) + " is infeasible");
        }
        s = apply_action(inst, s, actions[step]).next;
    }
    return paths;
}

}  // namespace srp
