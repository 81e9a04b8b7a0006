#include <doctest.h>

#include <cmath>

#include "gradcheck.hpp"
#include "srp/errors.hpp"
#include "srp/net.hpp"

using namespace srp;
using namespace srp::testing;

TEST_CASE("default architecture exposes a 150-entry actor head") {
    ArchConfig arch = desk_arch();
    CHECK(arch.k_max == 25);
    CHECK(arch.action_count() == 150);
    CHECK(arch.in_channels() == 51);
    CHECK(paper_arch().fc_width == 512);
    CHECK(paper_arch().action_count() == 150);
}

TEST_CASE("conv output sizes halve with stride 2") {
    CHECK(conv_output_size(16, {8, 3, 2, 1}) == 8);
    CHECK(conv_output_size(8, {8, 3, 2, 1}) == 4);
    CHECK(conv_output_size(64, {8, 3, 2, 1}) == 32);
    CHECK(conv_output_size(4, {8, 3, 2, 1}) == 2);
}

TEST_CASE("layout covers every slot without overlap") {
    ArchConfig arch = tiny_arch("tanh");
    ParamLayout layout = make_layout(arch);
    Eigen::Index expected = 0;
    for (const TensorSlot& slot : layout.slots) {
        CHECK(slot.offset == expected);
        expected += slot.size();
    }
    CHECK(layout.total == expected);
    CHECK(layout.slot("actor.w").rows == 6);
    CHECK(layout.slot("critic.w").cols == 8);
    CHECK_THROWS(layout.slot("nope"));
}

TEST_CASE("invalid architectures are rejected") {
    ArchConfig arch = desk_arch();
    arch.activation = "sigmoid";
    CHECK_THROWS(validate_arch(arch));
    arch = desk_arch(4);
    arch.conv = {{8, 5, 1, 0}};
    CHECK_THROWS(validate_arch(arch));
    arch = desk_arch();
    arch.fc_width = 0;
    CHECK_THROWS(validate_arch(arch));
}

TEST_CASE("masked softmax zeroes infeasible entries and normalizes the rest") {
    Eigen::VectorXd logits(6);
    logits << 3.0, -1.0, 0.5, 2.0, 0.0, -2.0;
    ActionMask mask = {1, 0, 1, 1, 0, 1};
    Eigen::VectorXd probs = masked_softmax(logits, mask);
    CHECK(probs[1] == 0.0);
    CHECK(probs[4] == 0.0);
    double sum = probs.sum();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(probs[0] > probs[3]);

    ActionMask one = {0, 0, 0, 1, 0, 0};
    Eigen::VectorXd single = masked_softmax(logits, one);
    CHECK(single[3] == doctest::Approx(1.0));
    CHECK(single.sum() == doctest::Approx(1.0));

    ActionMask none(6, 0);
    CHECK_THROWS_AS(masked_softmax(logits, none), NoFeasibleActionError);
}

TEST_CASE("forward output matches naive convolution") {
    ArchConfig arch = tiny_arch("tanh");
    Rng rng(3);
    ModelParams params = init_params(arch, rng);
    StateTensor input(arch.grid_size, arch.in_channels());
    for (Eigen::Index i = 0; i < input.data.size(); ++i) {
        input.data[i] = rng.uniform01() < 0.4 ? 1.0 : 0.0;
    }
    ActionMask mask(arch.action_count(), 1);
    NetOutput out = forward(params, input, mask);

    // Naive reimplementation of the same stack.
    ParamLayout layout = make_layout(arch);
    const ConvSpec& spec = arch.conv[0];
    const int n = arch.grid_size;
    const int on = conv_output_size(n, spec);
    const int ch_in = arch.in_channels();
    auto w = Eigen::Map<const Eigen::MatrixXd>(
        params.values.data() + layout.slot("conv0.w").offset, spec.out_channels,
        static_cast<Eigen::Index>(ch_in) * spec.kernel * spec.kernel);
    auto b = Eigen::Map<const Eigen::VectorXd>(
        params.values.data() + layout.slot("conv0.b").offset, spec.out_channels);

    Eigen::MatrixXd act(spec.out_channels, on * on);
    for (int f = 0; f < spec.out_channels; ++f) {
        for (int ro = 0; ro < on; ++ro) {
            for (int co = 0; co < on; ++co) {
                double acc = b[f];
                for (int kr = 0; kr < spec.kernel; ++kr) {
                    for (int kc = 0; kc < spec.kernel; ++kc) {
                        const int r = ro * spec.stride - spec.pad + kr;
                        const int c = co * spec.stride - spec.pad + kc;
                        if (r < 0 || r >= n || c < 0 || c >= n) continue;
                        for (int g = 0; g < ch_in; ++g) {
                            acc += w(f, g * spec.kernel * spec.kernel + kr * spec.kernel + kc) *
                                   input.at(r, c, g);
                        }
                    }
                }
                act(f, ro * on + co) = std::tanh(acc);
            }
        }
    }
    Eigen::Map<const Eigen::VectorXd> flat(act.data(), act.size());
    auto fc_branch = [&](const char* name) {
        auto w = Eigen::Map<const Eigen::MatrixXd>(
            params.values.data() + layout.slot(std::string(name) + ".w").offset, arch.fc_width,
            flat.size());
        auto b = Eigen::Map<const Eigen::VectorXd>(
            params.values.data() + layout.slot(std::string(name) + ".b").offset, arch.fc_width);
        return Eigen::VectorXd((w * flat + b).array().tanh());
    };
    Eigen::VectorXd actor_fc = fc_branch("actor_fc");
    Eigen::VectorXd critic_fc = fc_branch("critic_fc");
    auto actor_w = Eigen::Map<const Eigen::MatrixXd>(
        params.values.data() + layout.slot("actor.w").offset, arch.action_count(), arch.fc_width);
    auto actor_b = Eigen::Map<const Eigen::VectorXd>(
        params.values.data() + layout.slot("actor.b").offset, arch.action_count());
    auto critic_w = Eigen::Map<const Eigen::MatrixXd>(
        params.values.data() + layout.slot("critic.w").offset, 1, arch.fc_width);
    const double critic_b = params.values[layout.slot("critic.b").offset];

    Eigen::VectorXd logits = actor_w * actor_fc + actor_b;
    Eigen::VectorXd probs = masked_softmax(logits, mask);
    const double value = (critic_w * critic_fc)(0) + critic_b;

    CHECK(out.value == doctest::Approx(value).epsilon(1e-12));
    for (int a = 0; a < arch.action_count(); ++a) {
        CHECK(out.probs[a] == doctest::Approx(probs[a]).epsilon(1e-12));
    }
}

TEST_CASE("forward rejects shape mismatches and empty masks") {
    ArchConfig arch = tiny_arch("relu");
    Rng rng(1);
    ModelParams params = init_params(arch, rng);
    StateTensor wrong(8, arch.in_channels());
    ActionMask mask(arch.action_count(), 1);
    CHECK_THROWS(forward(params, wrong, mask));
    StateTensor input(arch.grid_size, arch.in_channels());
    CHECK_THROWS_AS(forward(params, input, ActionMask(arch.action_count(), 0)),
                    NoFeasibleActionError);
}

TEST_CASE("init_params is deterministic per seed and finite") {
    ArchConfig arch = tiny_arch("relu");
    Rng r1(5), r2(5), r3(6);
    ModelParams a = init_params(arch, r1);
    ModelParams b = init_params(arch, r2);
    ModelParams c = init_params(arch, r3);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.values.allFinite());
    CHECK(a.version == 0);
}
