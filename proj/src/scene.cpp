#include "srp/scene.hpp"

#include <algorithm>

#include "srp/errors.hpp"

namespace srp {

SceneInstance make_instance(std::string id, int grid_size, std::vector<Cell> impassable,
                            std::vector<ObjectFootprint> objects, std::vector<Pose> initial,
                            std::vector<Pose> target) {
    SceneInstance inst;
    inst.id = std::move(id);
    inst.grid_size = grid_size;
    std::sort(impassable.begin(), impassable.end());
    impassable.erase(std::unique(impassable.begin(), impassable.end()), impassable.end());
    inst.impassable_cells = std::move(impassable);
    inst.objects = std::move(objects);
    inst.initial = std::move(initial);
    inst.target = std::move(target);

    inst.impassable = Grid8::Zero(grid_size, grid_size);
    for (const Cell& cell : inst.impassable_cells) {
        if (cell.row < 0 || cell.row >= grid_size || cell.col < 0 || cell.col >= grid_size) {
            throw ParseError("impassable cell out of bounds");
        }
        inst.impassable(cell.row, cell.col) = 1;
    }
    validate_instance(inst);
    return inst;
}

bool pose_placeable(const SceneInstance& inst, const std::vector<Pose>& poses, int object_index,
                    const Pose& pose) {
    const ObjectFootprint& fp = inst.objects[object_index];
    const MaskBounds& b = fp.bounds[pose.bin];
    if (pose.row + b.min_dr < 0 || pose.row + b.max_dr >= inst.grid_size) return false;
    if (pose.col + b.min_dc < 0 || pose.col + b.max_dc >= inst.grid_size) return false;

    for (const CellOffset& o : fp.masks[pose.bin]) {
        const int r = pose.row + o.dr;
        const int c = pose.col + o.dc;
        if (inst.impassable(r, c)) return false;
    }
    // Pairwise overlap against every other object.
    const int k = inst.object_count();
    for (int j = 0; j < k; ++j) {
        if (j == object_index) continue;
        const ObjectFootprint& other = inst.objects[j];
        const Pose& pj = poses[j];
        for (const CellOffset& o : fp.masks[pose.bin]) {
            const int r = pose.row + o.dr;
            const int c = pose.col + o.dc;
            for (const CellOffset& q : other.masks[pj.bin]) {
                if (pj.row + q.dr == r && pj.col + q.dc == c) return false;
            }
        }
    }
    return true;
}

bool layout_collision_free(const SceneInstance& inst, const std::vector<Pose>& poses) {
    for (int i = 0; i < inst.object_count(); ++i) {
        if (!pose_placeable(inst, poses, i, poses[i])) return false;
    }
    return true;
}

std::vector<Cell> occupied_cells(const SceneInstance& inst, int object_index, const Pose& pose) {
    const ObjectFootprint& fp = inst.objects[object_index];
    std::vector<Cell> cells;
    cells.reserve(fp.masks[pose.bin].size());
    for (const CellOffset& o : fp.masks[pose.bin]) {
        cells.push_back({pose.row + o.dr, pose.col + o.dc});
    }
    return cells;
}

void validate_instance(const SceneInstance& inst) {
    if (inst.grid_size < 1) throw ParseError("grid_size must be positive");
    if (inst.objects.empty()) throw ParseError("instance needs at least one object");
    if (inst.initial.size() != inst.objects.size()) {
        throw ParseError("initial pose count does not match object count");
    }
    if (inst.target.size() != inst.objects.size()) {
        throw ParseError("target pose count does not match object count");
    }
    for (const std::vector<Pose>* poses : {&inst.initial, &inst.target}) {
        for (const Pose& p : *poses) {
            if (p.bin < 0 || p.bin >= kOrientationBins) throw ParseError("pose bin out of range");
            if (!inst.in_bounds(p.row, p.col)) throw ParseError("pose anchor out of bounds");
        }
    }
    for (const ObjectFootprint& fp : inst.objects) {
        for (const CellMask& m : fp.masks) {
            if (m.empty()) throw ParseError("empty footprint mask");
        }
    }
    if (!layout_collision_free(inst, inst.initial)) {
        throw ParseError("initial layout is not collision-free");
    }
    if (!layout_collision_free(inst, inst.target)) {
        throw ParseError("target layout is not collision-free");
    }
}

void validate_layout(const SceneInstance& inst, const LayoutState& state) {
    if (state.poses.size() != inst.objects.size()) {
        throw ParseError("layout pose count does not match object count");
    }
    for (const Pose& p : state.poses) {
        if (p.bin < 0 || p.bin >= kOrientationBins) throw ParseError("layout bin out of range");
    }
    if (!layout_collision_free(inst, state.poses)) {
        throw ParseError("layout is not collision-free");
    }
}

}  // namespace srp
