#pragma once

#include <Eigen/Dense>

#include "srp/net.hpp"

namespace srp {

struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Adaptive-moment optimizer over the flat parameter vector. Non-finite
// gradients skip the step and are counted instead of corrupting the params.
class Adam {
public:
    Adam(Eigen::Index size, AdamConfig cfg);

    bool step(ModelParams& params, const Eigen::VectorXd& grad);

    int steps() const { return t_; }
    int skipped() const { return skipped_; }
    const AdamConfig& config() const { return cfg_; }
    void set_lr(double lr) { cfg_.lr = lr; }

private:
    AdamConfig cfg_;
    Eigen::VectorXd m_;
    Eigen::VectorXd v_;
    int t_ = 0;
    int skipped_ = 0;
};

}  // namespace srp
