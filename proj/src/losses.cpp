#include "srp/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace srp {

double compute_advantage(const std::vector<double>& rewards, double bootstrap, double v_now,
                         double gamma) {
    double ret = 0.0;
    double g = 1.0;
    for (double r : rewards) {
        ret += g * r;
        g *= gamma;
    }
    return ret + g * bootstrap - v_now;
}

LossStats batch_losses(const ModelParams& params, const std::vector<TrainItem>& batch,
                       const LossTerms& terms, Eigen::VectorXd* grad) {
    LossStats stats;
    ForwardCache cache;
    Eigen::VectorXd dlogits;
    for (const TrainItem& item : batch) {
        forward_cached(params, item.state, item.mask, cache);
        dlogits.setZero(cache.logits.size());
        double dvalue = 0.0;

        if (terms.policy) {
            if (item.action < 0 || item.action >= cache.probs.size() || !item.mask[item.action]) {
                throw std::invalid_argument("policy loss needs a feasible recorded action");
            }
            const double p = cache.probs[item.action];
            const double coeff = item.is_weight * item.advantage;
            if (p < kLogFloor) {
                stats.policy += -coeff * std::log(kLogFloor);
                stats.clamp_events += 1;
            } else {
                stats.policy += -coeff * std::log(p);
                if (grad && coeff != 0.0) {
                    for (Eigen::Index i = 0; i < dlogits.size(); ++i) {
                        if (item.mask[i]) dlogits[i] += coeff * cache.probs[i];
                    }
                    dlogits[item.action] -= coeff;
                }
            }
        }

        if (terms.value) {
            const double err = cache.value - item.target_value;
            stats.value += item.is_weight * err * err;
            if (grad) dvalue += 2.0 * item.is_weight * err;
        }

        if (terms.beta_im > 0.0) {
            if (item.expert_action < 0 || item.expert_action >= cache.probs.size() ||
                !item.mask[item.expert_action]) {
                throw std::invalid_argument("imitation loss needs a feasible expert action");
            }
            const double p = cache.probs[item.expert_action];
            if (p < kLogFloor) {
                stats.imitation += -std::log(kLogFloor);
                stats.clamp_events += 1;
            } else {
                stats.imitation += -std::log(p);
                if (grad) {
                    for (Eigen::Index i = 0; i < dlogits.size(); ++i) {
                        if (item.mask[i]) dlogits[i] += terms.beta_im * cache.probs[i];
                    }
                    dlogits[item.expert_action] -= terms.beta_im;
                }
            }
        }

        if (grad) backward(params, cache, dlogits, dvalue, *grad);
    }
    return stats;
}

double policy_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                   Eigen::VectorXd* grad, int* clamp_events) {
    LossTerms terms;
    terms.policy = true;
    LossStats stats = batch_losses(params, batch, terms, grad);
    if (clamp_events) *clamp_events = stats.clamp_events;
    return stats.policy;
}

double value_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                  Eigen::VectorXd* grad) {
    LossTerms terms;
    terms.value = true;
    return batch_losses(params, batch, terms, grad).value;
}

double imitation_loss(const ModelParams& params, const std::vector<TrainItem>& batch,
                      Eigen::VectorXd* grad, int* clamp_events) {
    LossTerms terms;
    terms.beta_im = 1.0;
    LossStats stats = batch_losses(params, batch, terms, grad);
    if (clamp_events) *clamp_events = stats.clamp_events;
    return stats.imitation;
}

}  // namespace srp
