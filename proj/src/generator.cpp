#include "srp/generator.hpp"

#include <algorithm>
#include <string>

#include "srp/errors.hpp"

namespace srp {

namespace {

// Template polygons sit in local coordinates with the reference point a
// quarter cell inside the anchor cell, so no rotated edge ever crosses a
// cell center exactly.
Polygon rect_polygon(int w, int h) {
    const double x0 = -w / 2.0 + 0.25, x1 = w / 2.0 + 0.25;
    const double y0 = -h / 2.0 + 0.25, y1 = h / 2.0 + 0.25;
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Polygon l_polygon(int w, int h, int cut_w, int cut_h) {
    const double x0 = -w / 2.0 + 0.25, x1 = w / 2.0 + 0.25;
    const double y0 = -h / 2.0 + 0.25, y1 = h / 2.0 + 0.25;
    return {{x0, y0}, {x1 - cut_w, y0}, {x1 - cut_w, y0 + cut_h},
            {x1, y0 + cut_h}, {x1, y1}, {x0, y1}};
}

std::vector<Cell> perimeter_cells(int n) {
    std::vector<Cell> cells;
    for (int c = 0; c < n; ++c) {
        cells.push_back({0, c});
        cells.push_back({n - 1, c});
    }
    for (int r = 1; r < n - 1; ++r) {
        cells.push_back({r, 0});
        cells.push_back({r, n - 1});
    }
    return cells;
}

}  // namespace

void validate_config(const GeneratorConfig& cfg) {
    if (cfg.grid_size < 8) throw GenerationFailedError("grid_size must be at least 8");
    if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) {
        throw GenerationFailedError("object count range must satisfy 1 <= k_min <= k_max");
    }
    if (cfg.rect_min < 1 || cfg.rect_max < cfg.rect_min) {
        throw GenerationFailedError("rectangle side range must satisfy 1 <= rect_min <= rect_max");
    }
    if (cfg.walk_rounds < 0) throw GenerationFailedError("walk_rounds must be non-negative");
    if (cfg.l_shape_prob < 0.0 || cfg.l_shape_prob > 1.0) {
        throw GenerationFailedError("l_shape_prob must lie in [0, 1]");
    }
}

std::vector<Action> reversed_plan(const WalkRecord& rec) {
    std::vector<Action> plan;
    plan.reserve(rec.actions.size());
    for (auto it = rec.actions.rbegin(); it != rec.actions.rend(); ++it) {
        plan.push_back(it->inverse());
    }
    return plan;
}

ReplayResult replay_plan(const SceneInstance& inst, const LayoutState& from,
                         const std::vector<Action>& plan) {
    ReplayResult res;
    LayoutState s = from;
    res.success = is_success(inst, s);
    for (const Action& a : plan) {
        const int before = total_distance(inst, s);
        StepOutcome out = apply_action(inst, s, a);
        res.distance_sum += before - total_distance(inst, out.next);
        res.reward_sum += out.reward;
        res.final_reward = out.reward;
        res.success = out.success;
        res.steps += 1;
        s = out.next;
        if (out.done) break;  // the episode ends at success
    }
    return res;
}

SceneInstance generate_room(const GeneratorConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    Rng rng(mix_seed(seed, 0x726f6f6dull));
    const int n = cfg.grid_size;

    std::vector<Cell> walls = perimeter_cells(n);
    for (int i = 0; i < cfg.pillar_count; ++i) {
        walls.push_back({1 + rng.uniform_index(n - 2), 1 + rng.uniform_index(n - 2)});
    }

    Grid8 blocked = Grid8::Zero(n, n);
    for (const Cell& c : walls) blocked(c.row, c.col) = 1;

    const int k = cfg.k_min + rng.uniform_index(cfg.k_max - cfg.k_min + 1);
    std::vector<ObjectFootprint> objects;
    std::vector<Pose> target;

    for (int obj = 0; obj < k; ++obj) {
        const int w = cfg.rect_min + rng.uniform_index(cfg.rect_max - cfg.rect_min + 1);
        const int h = cfg.rect_min + rng.uniform_index(cfg.rect_max - cfg.rect_min + 1);
        Polygon poly;
        if (w >= 2 && h >= 2 && rng.uniform01() < cfg.l_shape_prob) {
            poly = l_polygon(w, h, 1 + rng.uniform_index(w - 1), 1 + rng.uniform_index(h - 1));
        } else {
            poly = rect_polygon(w, h);
        }
        ObjectFootprint fp = make_footprint(obj, std::move(poly), n);

        bool placed = false;
        for (int attempt = 0; attempt < cfg.max_place_retries && !placed; ++attempt) {
            Pose pose{rng.uniform_index(n), rng.uniform_index(n), rng.uniform_index(kOrientationBins)};
            const MaskBounds& b = fp.bounds[pose.bin];
            if (pose.row + b.min_dr < 0 || pose.row + b.max_dr >= n) continue;
            if (pose.col + b.min_dc < 0 || pose.col + b.max_dc >= n) continue;
            bool clear = true;
            for (const CellOffset& o : fp.masks[pose.bin]) {
                if (blocked(pose.row + o.dr, pose.col + o.dc)) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            for (const CellOffset& o : fp.masks[pose.bin]) {
                blocked(pose.row + o.dr, pose.col + o.dc) = 1;
            }
            target.push_back(pose);
            placed = true;
        }
        if (!placed) {
            throw GenerationFailedError("could not place object " + std::to_string(obj) + " after " +
                                        std::to_string(cfg.max_place_retries) + " tries");
        }
        objects.push_back(std::move(fp));
    }

    std::vector<Pose> initial = target;
    return make_instance("seed-" + std::to_string(seed), n, std::move(walls), std::move(objects),
                         std::move(initial), std::move(target));
}

std::pair<LayoutState, WalkRecord> random_walk_init(const SceneInstance& inst, int rounds,
                                                    Rng& rng) {
    LayoutState s{inst.target, 0};
    WalkRecord rec;
    for (int round = 0; round < rounds; ++round) {
        const int k = rng.uniform_index(inst.object_count());
        int feasible[kMovesPerObject];
        int count = 0;
        for (int m = 0; m < kMovesPerObject; ++m) {
            if (action_feasible(inst, s, k, static_cast<Move>(m))) feasible[count++] = m;
        }
        if (count == 0) {
            rec.skipped += 1;
            continue;
        }
        const Action a{k, static_cast<Move>(feasible[rng.uniform_index(count)])};
        s.poses[k] = moved_pose(s.poses[k], a.move);
        rec.actions.push_back(a);
    }
    s.step_count = 0;
    return {std::move(s), std::move(rec)};
}

SceneInstance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        SceneInstance inst = generate_room(cfg, mix_seed(seed, attempt));
        inst.id = "seed-" + std::to_string(seed);
        if (cfg.walk_rounds == 0) return inst;
        Rng walk_rng(mix_seed(seed, 0x77616c6bull + attempt));
        auto [start, rec] = random_walk_init(inst, cfg.walk_rounds, walk_rng);
        if (rec.actions.empty()) continue;
        if (2 * rec.skipped >= cfg.walk_rounds) continue;
        inst.initial = start.poses;
        validate_instance(inst);
        return inst;
    }
    throw GenerationFailedError("no usable walk after " + std::to_string(cfg.max_attempts) +
                                " attempts");
}

}  // namespace srp
