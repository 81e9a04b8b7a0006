#pragma once

#include <vector>

#include "srp/net.hpp"

namespace srp {

constexpr double kLogFloor = 1e-12;

// A = sum_i gamma^i r_i + gamma^m * bootstrap - v_now, m = rewards.size().
// Callers pass bootstrap = 0 when the segment ends at a terminal state.
double compute_advantage(const std::vector<double>& rewards, double bootstrap, double v_now,
                         double gamma);

struct TrainItem {
    StateTensor state;          // padded net input
    ActionMask mask;            // padded feasibility mask
    int action = -1;            // taken action, flat index
    double advantage = 0.0;
    double target_value = 0.0;  // critic regression target
    double is_weight = 1.0;
    int expert_action = -1;     // imitation target
};

struct LossTerms {
    bool policy = false;
    bool value = false;
    double beta_im = 0.0;
};

struct LossStats {
    double policy = 0.0;
    double value = 0.0;
    double imitation = 0.0;
    int clamp_events = 0;  // recorded actions whose probability hit the log floor

    double total(const LossTerms& terms) const {
        return (terms.policy ? policy : 0.0) + (terms.value ? value : 0.0) +
               terms.beta_im * imitation;
    }
};

// One forward/backward over the batch; adds d(total)/dparams into `grad`.
// Pass a null grad pointer to evaluate losses only.
LossStats batch_losses(const ModelParams& params, const std::vector<TrainItem>& batch,
                       const LossTerms& terms, Eigen::VectorXd* grad);

// Single-loss wrappers over batch_losses.
double policy_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                   Eigen::VectorXd* grad, int* clamp_events = nullptr);
double value_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                  Eigen::VectorXd* grad);
double imitation_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                      Eigen::VectorXd* grad, int* clamp_events = nullptr);

}  // namespace srp
