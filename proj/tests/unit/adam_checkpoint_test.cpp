#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gradcheck.hpp"
#include "srp/adam.hpp"
#include "srp/checkpoint.hpp"
#include "srp/errors.hpp"
#include "srp/losses.hpp"

using namespace srp;
using namespace srp::testing;

TEST_CASE("zero gradients leave params unchanged but bump the version") {
    ArchConfig arch = tiny_arch("tanh");
    Rng rng(1);
    ModelParams params = init_params(arch, rng);
    Eigen::VectorXd before = params.values;
    Adam opt(params.values.size(), {});
    CHECK(opt.step(params, Eigen::VectorXd::Zero(params.values.size())));
    CHECK(params.values == before);
    CHECK(params.version == 1);
    CHECK(opt.steps() == 1);
}

TEST_CASE("identical update sequences give identical params") {
    ArchConfig arch = tiny_arch("relu");
    Rng r1(9), r2(9);
    ModelParams a = init_params(arch, r1);
    ModelParams b = init_params(arch, r2);
    Adam oa(a.values.size(), {1e-3});
    Adam ob(b.values.size(), {1e-3});
    Rng grad_rng(33);
    for (int i = 0; i < 5; ++i) {
        Eigen::VectorXd g(a.values.size());
        for (Eigen::Index j = 0; j < g.size(); ++j) g[j] = grad_rng.normal();
        oa.step(a, g);
        ob.step(b, g);
    }
    CHECK(a.values == b.values);
    CHECK(a.version == 5);
}

TEST_CASE("non-finite gradients skip the step") {
    ArchConfig arch = tiny_arch("tanh");
    Rng rng(4);
    ModelParams params = init_params(arch, rng);
    Eigen::VectorXd before = params.values;
    Adam opt(params.values.size(), {});
    Eigen::VectorXd g = Eigen::VectorXd::Ones(params.values.size());
    g[7] = std::nan("");
    CHECK_FALSE(opt.step(params, g));
    CHECK(params.values == before);
    CHECK(params.version == 0);
    CHECK(opt.skipped() == 1);
    g[7] = 1.0;
    CHECK(opt.step(params, g));
    CHECK(params.version == 1);
}

TEST_CASE("overfitting one batch drives the loss down") {
    ArchConfig arch = tiny_arch("tanh");
    Rng rng(77);
    ModelParams params = init_params(arch, rng);
    std::vector<TrainItem> batch = random_batch(arch, 4, rng);
    for (TrainItem& item : batch) item.target_value = 3.0;
    LossTerms terms;
    terms.beta_im = 1.0;
    terms.value = true;
    Adam opt(params.values.size(), {1e-3});
    const double initial = batch_losses(params, batch, terms, nullptr).total(terms);
    Eigen::VectorXd grad(params.values.size());
    for (int step = 0; step < 100; ++step) {
        grad.setZero();
        batch_losses(params, batch, terms, &grad);
        opt.step(params, grad);
    }
    const double final_loss = batch_losses(params, batch, terms, nullptr).total(terms);
    CHECK(final_loss < initial);
    CHECK(final_loss < 0.5 * initial);
    CHECK(params.version == 100);
}

TEST_CASE("checkpoint round-trips params, arch and version") {
    ArchConfig arch = tiny_arch("relu");
    Rng rng(15);
    ModelParams params = init_params(arch, rng);
    params.version = 321;
    auto path = std::filesystem::temp_directory_path() / "srp_ckpt_test.bin";
    save_checkpoint(params, path.string());
    ModelParams loaded = load_checkpoint(path.string());
    CHECK(loaded.values == params.values);
    CHECK(loaded.version == 321);
    CHECK(arch_equal(loaded.arch, arch));
    ModelParams checked = load_checkpoint(path.string(), arch);
    CHECK(checked.values == params.values);
    std::filesystem::remove(path);
}

TEST_CASE("checkpoint load rejects a different architecture") {
    ArchConfig arch = tiny_arch("relu");
    Rng rng(16);
    ModelParams params = init_params(arch, rng);
    auto path = std::filesystem::temp_directory_path() / "srp_ckpt_mismatch.bin";
    save_checkpoint(params, path.string());
    ArchConfig other = tiny_arch("tanh");
    CHECK_THROWS_AS(load_checkpoint(path.string(), other), CheckpointError);
    ArchConfig wider = arch;
    wider.fc_width = 16;
    CHECK_THROWS_AS(load_checkpoint(path.string(), wider), CheckpointError);
    std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoints are refused") {
    auto dir = std::filesystem::temp_directory_path();
    auto bad_magic = dir / "srp_ckpt_bad_magic.bin";
    {
        std::ofstream out(bad_magic, std::ios::binary);
        out << "NOPExxxxxxxxxxxxxxxx";
    }
    CHECK_THROWS_AS(load_checkpoint(bad_magic.string()), CheckpointError);
    std::filesystem::remove(bad_magic);

    ArchConfig arch = tiny_arch("relu");
    Rng rng(17);
    ModelParams params = init_params(arch, rng);
    auto truncated = dir / "srp_ckpt_trunc.bin";
    save_checkpoint(params, truncated.string());
    auto size = std::filesystem::file_size(truncated);
    std::filesystem::resize_file(truncated, size - 64);
    CHECK_THROWS_AS(load_checkpoint(truncated.string()), CheckpointError);
    std::filesystem::remove(truncated);

    CHECK_THROWS_AS(load_checkpoint((dir / "srp_ckpt_missing.bin").string()), CheckpointError);
}
