#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "srp/env.hpp"
#include "srp/rng.hpp"

namespace srp {

struct ConvSpec {
    int out_channels = 8;
    int kernel = 3;
    int stride = 2;
    int pad = 1;
};

// Shared conv encoder; actor and critic each own an FC feature layer and a
// linear head on top of it.
struct ArchConfig {
    int grid_size = 16;
    int k_max = 25;
    std::vector<ConvSpec> conv = {{8, 3, 2, 1}, {16, 3, 2, 1}};
    int fc_width = 128;
    std::string activation = "relu";  // or "tanh"

    int in_channels() const { return 2 * k_max + 1; }
    int action_count() const { return kMovesPerObject * k_max; }
};

ArchConfig desk_arch(int grid_size = 16, int k_max = 25);
ArchConfig paper_arch();

void validate_arch(const ArchConfig& arch);
bool arch_equal(const ArchConfig& a, const ArchConfig& b);

int conv_output_size(int n, const ConvSpec& spec);

struct TensorSlot {
    std::string name;
    Eigen::Index offset = 0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;

    Eigen::Index size() const { return rows * cols; }
};

struct ParamLayout {
    std::vector<TensorSlot> slots;
    Eigen::Index total = 0;

    const TensorSlot& slot(const std::string& name) const;
};

ParamLayout make_layout(const ArchConfig& arch);

struct ModelParams {
    ArchConfig arch;
    Eigen::VectorXd values;
    std::int64_t version = 0;
};

ModelParams init_params(const ArchConfig& arch, Rng& rng);

struct NetOutput {
    Eigen::VectorXd probs;  // exact zeros at infeasible entries
    double value = 0.0;
};

// Softmax over feasible entries only; throws NoFeasibleActionError when the
// mask is all false.
Eigen::VectorXd masked_softmax(const Eigen::VectorXd& logits, const ActionMask& mask);

// Everything backward needs; reusable across calls to avoid reallocation.
struct ForwardCache {
    std::vector<Eigen::MatrixXd> inputs;    // per conv layer, ch x n^2
    std::vector<Eigen::MatrixXd> cols;      // im2col buffers
    std::vector<Eigen::MatrixXd> conv_pre;  // pre-activation
    Eigen::MatrixXd encoder_out;            // last conv activation
    Eigen::VectorXd actor_fc_pre, actor_fc_act;
    Eigen::VectorXd critic_fc_pre, critic_fc_act;
    Eigen::VectorXd logits;
    Eigen::VectorXd probs;
    ActionMask mask;
    double value = 0.0;
};

NetOutput forward(const ModelParams& params, const StateTensor& input, const ActionMask& mask);
NetOutput forward_cached(const ModelParams& params, const StateTensor& input,
                         const ActionMask& mask, ForwardCache& cache);

// Adds dL/dparams into `grad` given dL/dlogits and dL/dvalue for one item.
void backward(const ModelParams& params, const ForwardCache& cache,
              const Eigen::VectorXd& dlogits, double dvalue, Eigen::VectorXd& grad);

}  // namespace srp
