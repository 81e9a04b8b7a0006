#include "srp/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace srp {

Adam::Adam(Eigen::Index size, AdamConfig cfg) : cfg_(cfg) {
    m_ = Eigen::VectorXd::Zero(size);
    v_ = Eigen::VectorXd::Zero(size);
}

bool Adam::step(ModelParams& params, const Eigen::VectorXd& grad) {
    if (params.values.size() != m_.size() || grad.size() != m_.size()) {
        throw std::invalid_argument("optimizer state size does not match parameters");
    }
    if (!grad.allFinite()) {
        skipped_ += 1;
        return false;
    }
    t_ += 1;
    m_ = cfg_.beta1 * m_ + (1.0 - cfg_.beta1) * grad;
    v_ = cfg_.beta2 * v_ + (1.0 - cfg_.beta2) * grad.cwiseProduct(grad);
    const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    params.values.array() -=
        cfg_.lr * (m_.array() / bc1) / ((v_.array() / bc2).sqrt() + cfg_.eps);
    params.version += 1;
    return true;
}

}  // namespace srp
