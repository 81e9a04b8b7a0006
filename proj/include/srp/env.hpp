#pragma once

#include <Eigen/Dense>

#include "srp/scene.hpp"
#include "srp/types.hpp"

namespace srp {

// Binary occupancy tensor, channel-major storage: channel ch at
// data[ch*n*n + r*n + c].
struct StateTensor {
    int n = 0;
    int channels = 0;
    Eigen::VectorXd data;

    StateTensor() = default;
    StateTensor(int n_, int channels_) : n(n_), channels(channels_) {
        data = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * n * channels_);
    }

    double at(int r, int c, int ch) const { return data[idx(r, c, ch)]; }
    double& at(int r, int c, int ch) { return data[idx(r, c, ch)]; }
    Eigen::Index idx(int r, int c, int ch) const {
        return static_cast<Eigen::Index>(ch) * n * n + static_cast<Eigen::Index>(r) * n + c;
    }
    double channel_sum(int ch) const { return data.segment(static_cast<Eigen::Index>(ch) * n * n, n * n).sum(); }
};

// Pose after applying one atomic move (no feasibility check).
Pose moved_pose(const Pose& p, Move m);

// True iff moving `object_index` with `m` keeps the layout in bounds and
// collision-free.
bool action_feasible(const SceneInstance& inst, const LayoutState& s, int object_index, Move m);

// One entry per flat action index, length 6*K.
ActionMask feasible_actions(const SceneInstance& inst, const LayoutState& s);

bool any_feasible(const ActionMask& mask);

bool is_success(const SceneInstance& inst, const LayoutState& s);

// Sum of pose_distance over all objects.
int total_distance(const SceneInstance& inst, const LayoutState& s);

// Applies a feasible action and scores it: distance term (+1/-1), Arrival
// (+4), Leave (-4), Success (+50), summed. `step_limit` bounds the episode;
// pass kNoStepLimit for the unbounded MDP (tree search).
StepOutcome apply_action(const SceneInstance& inst, const LayoutState& s, const Action& a,
                         int step_limit = kNoStepLimit);

// Channels 0..K-1: current objects; channel K: impassable; K+1..2K: targets.
StateTensor build_state_tensor(const SceneInstance& inst, const LayoutState& s);

// Net-facing variant padded to k_max object slots: current object k at
// channel k, impassable at k_max, target k at k_max+1+k; absent slots stay
// zero. Throws if the instance has more than k_max objects.
StateTensor build_net_input(const SceneInstance& inst, const LayoutState& s, int k_max);

// Pads a length 6*K mask to 6*k_max (absent entries infeasible).
ActionMask pad_action_mask(const ActionMask& mask, int k_max);

// Episode start state: the instance's stored initial poses, or an explicit
// override. Both validate the layout and reset step_count.
LayoutState initial_layout(const SceneInstance& inst);
LayoutState initial_layout(const SceneInstance& inst, std::vector<Pose> poses);

}  // namespace srp
