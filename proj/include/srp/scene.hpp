#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "srp/footprint.hpp"
#include "srp/types.hpp"

namespace srp {

using Grid8 = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct Cell {
    int row = 0;
    int col = 0;

    auto operator<=>(const Cell&) const = default;
};

// Static problem description: grid, walls, object shapes, target poses.
// Immutable after construction; safe to share across threads.
struct SceneInstance {
    std::string id;
    int grid_size = 0;
    std::vector<Cell> impassable_cells;  // sorted, unique
    Grid8 impassable;                    // grid_size x grid_size, 1 = blocked
    std::vector<ObjectFootprint> objects;
    std::vector<Pose> initial;
    std::vector<Pose> target;

    int object_count() const { return static_cast<int>(objects.size()); }
    int action_count() const { return object_count() * kMovesPerObject; }
    bool in_bounds(int r, int c) const {
        return r >= 0 && r < grid_size && c >= 0 && c < grid_size;
    }
};

SceneInstance make_instance(std::string id, int grid_size, std::vector<Cell> impassable,
                            std::vector<ObjectFootprint> objects, std::vector<Pose> initial,
                            std::vector<Pose> target);

// True iff pose places every mask cell of the object in bounds, off walls,
// and off the cells of all other objects at `poses` (the object itself is
// ignored).
bool pose_placeable(const SceneInstance& inst, const std::vector<Pose>& poses, int object_index,
                    const Pose& pose);

bool layout_collision_free(const SceneInstance& inst, const std::vector<Pose>& poses);

// Absolute cells covered by one object at `pose`.
std::vector<Cell> occupied_cells(const SceneInstance& inst, int object_index, const Pose& pose);

// Throws if the instance breaks a structural invariant (empty grid, target
// collisions, impassable cells under a target footprint, ...).
void validate_instance(const SceneInstance& inst);

void validate_layout(const SceneInstance& inst, const LayoutState& state);

}  // namespace srp
