#include "srp/env.hpp"

#include <algorithm>
#include <stdexcept>

#include "srp/errors.hpp"

namespace srp {

namespace {

using OccGrid = Eigen::Array<std::int16_t, Eigen::Dynamic, Eigen::Dynamic>;
constexpr std::int16_t kFree = -1;
constexpr std::int16_t kWall = -2;

// Scratch occupancy grid reused across calls on the same thread.
OccGrid& occupancy_scratch(const SceneInstance& inst, const LayoutState& s) {
    thread_local OccGrid grid;
    const int n = inst.grid_size;
    if (grid.rows() != n || grid.cols() != n) grid.resize(n, n);
    grid.setConstant(kFree);
    for (const Cell& cell : inst.impassable_cells) grid(cell.row, cell.col) = kWall;
    for (int k = 0; k < inst.object_count(); ++k) {
        const Pose& p = s.poses[k];
        for (const CellOffset& o : inst.objects[k].masks[p.bin]) {
            grid(p.row + o.dr, p.col + o.dc) = static_cast<std::int16_t>(k);
        }
    }
    return grid;
}

bool pose_fits(const SceneInstance& inst, const OccGrid& grid, int object_index, const Pose& pose) {
    const ObjectFootprint& fp = inst.objects[object_index];
    const MaskBounds& b = fp.bounds[pose.bin];
    if (pose.row + b.min_dr < 0 || pose.row + b.max_dr >= inst.grid_size) return false;
    if (pose.col + b.min_dc < 0 || pose.col + b.max_dc >= inst.grid_size) return false;
    for (const CellOffset& o : fp.masks[pose.bin]) {
        const std::int16_t v = grid(pose.row + o.dr, pose.col + o.dc);
        if (v != kFree && v != object_index) return false;
    }
    return true;
}

}  // namespace

Pose moved_pose(const Pose& p, Move m) {
    Pose q = p;
    switch (m) {
        case Move::kUp: q.row -= 1; break;
        case Move::kDown: q.row += 1; break;
        case Move::kLeft: q.col -= 1; break;
        case Move::kRight: q.col += 1; break;
        case Move::kRotCw: q.bin = (q.bin + 1) % kOrientationBins; break;
        case Move::kRotCcw: q.bin = (q.bin + kOrientationBins - 1) % kOrientationBins; break;
    }
    return q;
}

bool action_feasible(const SceneInstance& inst, const LayoutState& s, int object_index, Move m) {
    const OccGrid& grid = occupancy_scratch(inst, s);
    return pose_fits(inst, grid, object_index, moved_pose(s.poses[object_index], m));
}

ActionMask feasible_actions(const SceneInstance& inst, const LayoutState& s) {
    const OccGrid& grid = occupancy_scratch(inst, s);
    ActionMask mask(inst.action_count(), 0);
    for (int k = 0; k < inst.object_count(); ++k) {
        for (int m = 0; m < kMovesPerObject; ++m) {
            const Pose cand = moved_pose(s.poses[k], static_cast<Move>(m));
            mask[k * kMovesPerObject + m] = pose_fits(inst, grid, k, cand) ? 1 : 0;
        }
    }
    return mask;
}

bool any_feasible(const ActionMask& mask) {
    return std::any_of(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; });
}

bool is_success(const SceneInstance& inst, const LayoutState& s) {
    for (int k = 0; k < inst.object_count(); ++k) {
        if (pose_distance(s.poses[k], inst.target[k]) != 0) return false;
    }
    return true;
}

int total_distance(const SceneInstance& inst, const LayoutState& s) {
    int sum = 0;
    for (int k = 0; k < inst.object_count(); ++k) {
        sum += pose_distance(s.poses[k], inst.target[k]);
    }
    return sum;
}

StepOutcome apply_action(const SceneInstance& inst, const LayoutState& s, const Action& a,
                         int step_limit) {
    if (a.object_index < 0 || a.object_index >= inst.object_count()) {
        throw InvalidActionError("object index " + std::to_string(a.object_index) + " out of range");
    }
    if (!action_feasible(inst, s, a.object_index, a.move)) {
        throw InfeasibleActionError("infeasible action " + action_to_string(a));
    }

    const Pose old_pose = s.poses[a.object_index];
    const Pose new_pose = moved_pose(old_pose, a.move);
    const Pose& target = inst.target[a.object_index];
    const int old_d = pose_distance(old_pose, target);
    const int new_d = pose_distance(new_pose, target);

    StepOutcome out;
    out.next = s;
    out.next.poses[a.object_index] = new_pose;
    out.next.step_count = s.step_count + 1;

    // Atomic moves change exactly one pose coordinate by one, so the
    // distance term is always +1 or -1.
    double reward = new_d < old_d ? 1.0 : -1.0;
    if (new_d == 0 && old_d != 0) reward += 4.0;
    if (old_d == 0 && new_d != 0) reward -= 4.0;

    out.success = is_success(inst, out.next);
    if (out.success) reward += 50.0;
    out.reward = reward;
    out.done = out.success || (step_limit != kNoStepLimit && out.next.step_count >= step_limit);
    return out;
}

StateTensor build_state_tensor(const SceneInstance& inst, const LayoutState& s) {
    const int k = inst.object_count();
    StateTensor t(inst.grid_size, 2 * k + 1);
    for (int i = 0; i < k; ++i) {
        const Pose& p = s.poses[i];
        for (const CellOffset& o : inst.objects[i].masks[p.bin]) {
            t.at(p.row + o.dr, p.col + o.dc, i) = 1.0;
        }
        const Pose& tp = inst.target[i];
        for (const CellOffset& o : inst.objects[i].masks[tp.bin]) {
            t.at(tp.row + o.dr, tp.col + o.dc, k + 1 + i) = 1.0;
        }
    }
    for (const Cell& cell : inst.impassable_cells) t.at(cell.row, cell.col, k) = 1.0;
    return t;
}

StateTensor build_net_input(const SceneInstance& inst, const LayoutState& s, int k_max) {
    const int k = inst.object_count();
    if (k > k_max) throw std::invalid_argument("instance has more objects than the network supports");
    StateTensor t(inst.grid_size, 2 * k_max + 1);
    for (int i = 0; i < k; ++i) {
        const Pose& p = s.poses[i];
        for (const CellOffset& o : inst.objects[i].masks[p.bin]) {
            t.at(p.row + o.dr, p.col + o.dc, i) = 1.0;
        }
        const Pose& tp = inst.target[i];
        for (const CellOffset& o : inst.objects[i].masks[tp.bin]) {
            t.at(tp.row + o.dr, tp.col + o.dc, k_max + 1 + i) = 1.0;
        }
    }
    for (const Cell& cell : inst.impassable_cells) t.at(cell.row, cell.col, k_max) = 1.0;
    return t;
}

ActionMask pad_action_mask(const ActionMask& mask, int k_max) {
    ActionMask padded(static_cast<std::size_t>(k_max) * kMovesPerObject, 0);
    std::copy(mask.begin(), mask.end(), padded.begin());
    return padded;
}

LayoutState initial_layout(const SceneInstance& inst) { return initial_layout(inst, inst.initial); }

LayoutState initial_layout(const SceneInstance& inst, std::vector<Pose> poses) {
    LayoutState s;
    s.poses = std::move(poses);
    s.step_count = 0;
    validate_layout(inst, s);
    return s;
}

}  // namespace srp
