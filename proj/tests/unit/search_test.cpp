#include <doctest.h>

#include <cmath>

#include "bfs_oracle.hpp"
#include "builders.hpp"
#include "srp/errors.hpp"
#include "srp/search.hpp"

using namespace srp;
using namespace srp::testing;

namespace {

// Deterministic priors: weight w(a) proportional to a fixed table, value 0.
class FixedEvaluator : public Evaluator {
public:
    explicit FixedEvaluator(std::vector<double> weights) : weights_(std::move(weights)) {}

    EvalResult evaluate(const SceneInstance& inst, const LayoutState&,
                        const ActionMask& mask) override {
        EvalResult res;
        res.priors = Eigen::VectorXd::Zero(inst.action_count());
        double total = 0.0;
        for (int a = 0; a < inst.action_count(); ++a) {
            if (mask[a]) total += weights_.at(a);
        }
        for (int a = 0; a < inst.action_count(); ++a) {
            if (mask[a]) res.priors[a] = weights_.at(a) / total;
        }
        return res;
    }

private:
    std::vector<double> weights_;
};

SceneInstance empty_room_1obj(Pose init, Pose target) {
    return build_instance(8, {{unit_square(), init, target}});
}

}  // namespace

TEST_CASE("uct score hand example and limits") {
    CHECK(uct_score(0.5, 1, 4, 1.414) == doctest::Approx(1.5185).epsilon(1e-3));
    CHECK(uct_score(0.0, 1000000, 1000000, 1.414) == doctest::Approx(0.0).epsilon(1e-2));
    CHECK(uct_score(0.9, 3, 10, 1.414) > uct_score(0.1, 3, 10, 1.414));
    CHECK(uct_score(0.0, 0, 1, 1.414) == doctest::Approx(1.414 * std::sqrt(std::log(2.0))));
}

TEST_CASE("first simulation expands the root, second the highest-prior edge") {
    SceneInstance inst = empty_room_1obj({4, 4, 0}, {4, 6, 0});
    std::vector<double> w(6, 0.05);
    w[Action{0, Move::kRotCw}.flat()] = 0.75;
    FixedEvaluator eval(w);
    SearchConfig cfg;
    SearchTree tree(inst, cfg);
    tree.reset_root(initial_layout(inst));

    tree.run_simulation(eval);
    CHECK(tree.root().n_s == 1);
    CHECK(tree.nodes().size() == 1);
    int visited = 0;
    for (const EdgeStats& e : tree.root().edges) visited += e.n_sa;
    CHECK(visited == 0);

    tree.run_simulation(eval);
    CHECK(tree.root().n_s == 2);
    for (const EdgeStats& e : tree.root().edges) {
        if (e.action == Action{0, Move::kRotCw}.flat()) {
            CHECK(e.n_sa == 1);
            CHECK(e.child >= 0);
        } else {
            CHECK(e.n_sa == 0);
        }
    }
    tree.check_invariants();
}

TEST_CASE("success edge backs up E = R + gamma * 0 with two rounds") {
    SceneInstance inst = empty_room_1obj({2, 3, 0}, {2, 4, 0});
    std::vector<double> w(6, 0.02);
    w[Action{0, Move::kRight}.flat()] = 0.9;
    FixedEvaluator eval(w);
    SearchConfig cfg;
    cfg.rounds = 2;
    SearchTree tree(inst, cfg);
    tree.reset_root(initial_layout(inst));
    ExpertDecision decision = tree.decide(eval);
    CHECK(decision.action.flat() == Action{0, Move::kRight}.flat());
    CHECK(decision.expert_value == doctest::Approx(55.0));
    CHECK(tree.root().v_backed == doctest::Approx(55.0));
    tree.check_invariants();
}

TEST_CASE("after R rounds the root visit counts sum to R - 1") {
    SceneInstance inst = empty_room_1obj({1, 1, 0}, {5, 6, 3});
    UniformEvaluator eval;
    SearchConfig cfg;
    cfg.rounds = 50;
    SearchTree tree(inst, cfg);
    tree.reset_root(initial_layout(inst));
    ExpertDecision decision = tree.decide(eval);
    CHECK(tree.root().n_s == 50);
    int total = 0;
    for (int v : decision.visit_counts) total += v;
    CHECK(total == 49);
    tree.check_invariants();

    double prior_sum = 0.0;
    for (double p : decision.root_priors) prior_sum += p;
    CHECK(prior_sum == doctest::Approx(1.0));
}

TEST_CASE("search is deterministic for fixed inputs") {
    SceneInstance inst = build_instance(
        8,
        {{rect2x1(), {3, 3, 0}, {6, 5, 6}},
         {unit_square(), {3, 5, 0}, {1, 1, 0}}});
    UniformEvaluator eval;
    SearchConfig cfg;
    ExpertDecision a = run_search(inst, initial_layout(inst), eval, cfg);
    ExpertDecision b = run_search(inst, initial_layout(inst), eval, cfg);
    CHECK(a.action.flat() == b.action.flat());
    CHECK(a.expert_value == b.expert_value);
    CHECK(a.visit_counts == b.visit_counts);
}

TEST_CASE("search never credits an infeasible action") {
    SceneInstance inst = build_instance(
        8,
        {{rect2x1(), {1, 2, 0}, {6, 5, 0}},
         {unit_square(), {1, 4, 0}, {5, 1, 0}}},
        {{2, 2}, {2, 3}});
    UniformEvaluator eval;
    SearchConfig cfg;
    LayoutState s = initial_layout(inst);
    ActionMask mask = feasible_actions(inst, s);
    ExpertDecision decision = run_search(inst, s, eval, cfg);
    CHECK(mask[decision.action.flat()] == 1);
    for (int a = 0; a < inst.action_count(); ++a) {
        if (!mask[a]) {
            CHECK(decision.visit_counts[a] == 0);
            CHECK(decision.root_priors[a] == 0.0);
        }
    }
}

TEST_CASE("single-object searches find BFS-optimal plans") {
    // Spec toy: 1x1 object on an empty 8x8 grid, distance-to-target <= 4.
    SceneInstance probe = empty_room_1obj({0, 0, 0}, {0, 2, 0});
    UniformEvaluator eval;
    SearchConfig cfg;
    ExpertDecision first = run_search(probe, initial_layout(probe), eval, cfg);
    CHECK(first.action.flat() == Action{0, Move::kRight}.flat());

    Rng rng(123);
    int checked = 0;
    while (checked < 12) {
        Pose init{rng.uniform_index(8), rng.uniform_index(8), rng.uniform_index(24)};
        Pose target{rng.uniform_index(8), rng.uniform_index(8), rng.uniform_index(24)};
        const int d = pose_distance(init, target);
        if (d < 1 || d > 4) continue;
        ++checked;
        SceneInstance inst = empty_room_1obj(init, target);
        LayoutState s = initial_layout(inst);
        const int optimal = bfs_optimal_length(inst, s);
        REQUIRE(optimal == d);
        int steps = 0;
        while (!is_success(inst, s) && steps < 2 * optimal + 2) {
            ExpertDecision dec = run_search(inst, s, eval, cfg);
            s = apply_action(inst, s, dec.action).next;
            ++steps;
        }
        CHECK(is_success(inst, s));
        CHECK(steps == optimal);
    }
}

TEST_CASE("deciding on a success state is a contract violation") {
    SceneInstance inst = empty_room_1obj({2, 4, 0}, {2, 4, 0});
    UniformEvaluator eval;
    SearchConfig cfg;
    SearchTree tree(inst, cfg);
    tree.reset_root(initial_layout(inst));
    CHECK_THROWS_AS(tree.decide(eval), std::invalid_argument);
}

TEST_CASE("jammed root raises a jammed-state error") {
    // A 1x4 bar in a pocket exactly its own footprint: rotating one bin
    // needs cells outside the pocket, so nothing can move.
    Polygon bar = {{-1.75, -0.25}, {2.25, -0.25}, {2.25, 0.75}, {-1.75, 0.75}};
    ObjectFootprint fp = make_footprint(0, bar, 8);
    const Pose pose{2, 4, 0};
    const Pose target{2, 4, 12};
    REQUIRE(fp.masks[0] == fp.masks[12]);

    std::vector<Cell> walls;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            bool covered = false;
            for (const CellOffset& o : fp.masks[0]) {
                if (pose.row + o.dr == r && pose.col + o.dc == c) covered = true;
            }
            if (!covered) walls.push_back({r, c});
        }
    }
    SceneInstance inst = make_instance("jam", 8, std::move(walls), {fp}, {pose}, {target});
    LayoutState s = initial_layout(inst);
    REQUIRE_FALSE(any_feasible(feasible_actions(inst, s)));

    UniformEvaluator eval;
    SearchConfig cfg;
    CHECK_THROWS_AS(run_search(inst, s, eval, cfg), JammedStateError);
}

TEST_CASE("subtree reuse keeps the chosen child as the new root") {
    SceneInstance inst = empty_room_1obj({1, 1, 0}, {4, 5, 0});
    UniformEvaluator eval;
    SearchConfig cfg;
    cfg.reuse_subtree = true;
    SearchTree tree(inst, cfg);
    LayoutState s = initial_layout(inst);
    tree.reset_root(s);
    ExpertDecision dec = tree.decide(eval);
    StepOutcome out = apply_action(inst, s, dec.action);
    const std::size_t before = tree.nodes().size();
    tree.advance_root(dec.action, out.next);
    CHECK(tree.nodes().size() == before);
    CHECK(tree.root().state == out.next);
    CHECK(tree.root().n_s >= 1);

    SearchConfig fresh_cfg;
    SearchTree fresh(inst, fresh_cfg);
    fresh.reset_root(s);
    ExpertDecision dec2 = fresh.decide(eval);
    StepOutcome out2 = apply_action(inst, s, dec2.action);
    fresh.advance_root(dec2.action, out2.next);
    CHECK(fresh.nodes().size() == 1);
    CHECK(fresh.root().n_s == 0);
}

TEST_CASE("invalid search configs are rejected") {
    SearchConfig cfg;
    cfg.rounds = 0;
    CHECK_THROWS(validate_search_config(cfg));
    cfg = SearchConfig{};
    cfg.c_explore = 0.0;
    CHECK_THROWS(validate_search_config(cfg));
    cfg = SearchConfig{};
    cfg.gamma = 1.5;
    CHECK_THROWS(validate_search_config(cfg));
    cfg = SearchConfig{};
    cfg.gamma = 0.0;
    CHECK_THROWS(validate_search_config(cfg));
}
