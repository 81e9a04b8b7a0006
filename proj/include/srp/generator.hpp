#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "srp/env.hpp"
#include "srp/rng.hpp"
#include "srp/scene.hpp"

namespace srp {

struct GeneratorConfig {
    int grid_size = 64;
    int k_min = 1;
    int k_max = 4;
    int rect_min = 1;       // rectangle side range, cells
    int rect_max = 3;
    double l_shape_prob = 0.25;
    int pillar_count = 0;   // 1x1 interior obstacles besides the perimeter
    int walk_rounds = 1000;
    int max_place_retries = 200;
    int max_attempts = 20;  // room regenerations before giving up
};

void validate_config(const GeneratorConfig& cfg);

// Random walk applied from the target layout; replaying the reversed,
// inverted action list from the walk's end state reaches the target again.
struct WalkRecord {
    std::vector<Action> actions;
    int skipped = 0;
};

std::vector<Action> reversed_plan(const WalkRecord& rec);

// Replay stops at the first terminal step, so a plan whose prefix already
// completes the layout never collects rewards past the success.
struct ReplayResult {
    bool success = false;
    double reward_sum = 0.0;
    double final_reward = 0.0;
    int distance_sum = 0;  // sum of per-step distance terms
    int steps = 0;
};

ReplayResult replay_plan(const SceneInstance& inst, const LayoutState& from,
                         const std::vector<Action>& plan);

// Perimeter-walled room with rejection-sampled target poses; initial poses
// start equal to the targets. Deterministic per (cfg, seed).
SceneInstance generate_room(const GeneratorConfig& cfg, std::uint64_t seed);

std::pair<LayoutState, WalkRecord> random_walk_init(const SceneInstance& inst, int rounds,
                                                    Rng& rng);

// Room plus scrambled initial layout, regenerating while the walk jams more
// than half its rounds or records no move at all.
SceneInstance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed);

}  // namespace srp
