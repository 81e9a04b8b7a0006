#include <doctest.h>

#include <memory>

#include "builders.hpp"
#include "srp/errors.hpp"
#include "srp/evaluator.hpp"
#include "srp/net.hpp"

using namespace srp;
using namespace srp::testing;

TEST_CASE("uniform evaluator spreads mass over feasible actions") {
    SceneInstance inst = build_instance(8, {{unit_square(), {0, 0, 0}, {4, 4, 0}}});
    LayoutState s = initial_layout(inst);
    ActionMask mask = feasible_actions(inst, s);
    // Corner: Up and Left are walls, so 4 of 6 actions remain.
    int feasible = 0;
    for (uint8_t m : mask) feasible += m;
    REQUIRE(feasible == 4);

    UniformEvaluator eval;
    EvalResult res = eval.evaluate(inst, s, mask);
    CHECK(res.value == 0.0);
    CHECK(res.priors.size() == 6);
    for (int a = 0; a < 6; ++a) {
        CHECK(res.priors[a] == doctest::Approx(mask[a] ? 0.25 : 0.0));
    }

    ActionMask none(6, 0);
    CHECK_THROWS_AS(eval.evaluate(inst, s, none), NoFeasibleActionError);
}

TEST_CASE("net evaluator matches a direct padded forward pass") {
    ArchConfig arch = desk_arch(8, 3);
    Rng rng(99);
    auto params = std::make_shared<ModelParams>(init_params(arch, rng));

    SceneInstance inst = build_instance(
        8,
        {{unit_square(), {2, 2, 0}, {5, 5, 0}},
         {rect2x1(), {4, 3, 0}, {1, 5, 6}}});
    LayoutState s = initial_layout(inst);
    ActionMask mask = feasible_actions(inst, s);

    NetEvaluator eval(params);
    EvalResult res = eval.evaluate(inst, s, mask);
    CHECK(res.priors.size() == inst.action_count());

    ForwardCache cache;
    forward_cached(*params, build_net_input(inst, s, arch.k_max),
                   pad_action_mask(mask, arch.k_max), cache);
    for (int a = 0; a < inst.action_count(); ++a) {
        CHECK(res.priors[a] == doctest::Approx(cache.probs[a]));
    }
    CHECK(res.value == doctest::Approx(cache.value));

    // Padded slots carry no probability, so the slice still sums to one.
    CHECK(res.priors.sum() == doctest::Approx(1.0));
    for (int a = 0; a < inst.action_count(); ++a) {
        if (!mask[a]) CHECK(res.priors[a] == 0.0);
    }
}

TEST_CASE("net evaluator rejects instances wider than the arch") {
    ArchConfig arch = desk_arch(8, 1);
    Rng rng(7);
    auto params = std::make_shared<ModelParams>(init_params(arch, rng));
    SceneInstance inst = build_instance(
        8,
        {{unit_square(), {2, 2, 0}, {5, 5, 0}},
         {unit_square(), {4, 4, 0}, {1, 1, 0}}});
    LayoutState s = initial_layout(inst);
    NetEvaluator eval(params);
    CHECK_THROWS(eval.evaluate(inst, s, feasible_actions(inst, s)));
}
