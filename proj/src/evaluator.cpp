#include "srp/evaluator.hpp"

#include <stdexcept>

#include "srp/errors.hpp"

namespace srp {

EvalResult UniformEvaluator::evaluate(const SceneInstance& inst, const LayoutState&,
                                      const ActionMask& mask) {
    EvalResult res;
    res.priors = Eigen::VectorXd::Zero(inst.action_count());
    int feasible = 0;
    for (int a = 0; a < inst.action_count(); ++a) {
        if (mask[a]) ++feasible;
    }
    if (feasible == 0) throw NoFeasibleActionError("uniform evaluator: no feasible action");
    for (int a = 0; a < inst.action_count(); ++a) {
        if (mask[a]) res.priors[a] = 1.0 / feasible;
    }
    return res;
}

NetEvaluator::NetEvaluator(std::shared_ptr<const ModelParams> params)
    : params_(std::move(params)) {
    if (!params_) throw std::invalid_argument("null parameter snapshot");
}

EvalResult NetEvaluator::evaluate(const SceneInstance& inst, const LayoutState& s,
                                  const ActionMask& mask) {
    const int k_max = params_->arch.k_max;
    StateTensor input = build_net_input(inst, s, k_max);
    ActionMask padded = pad_action_mask(mask, k_max);
    NetOutput out = forward_cached(*params_, input, padded, cache_);
    EvalResult res;
    res.priors = out.probs.head(inst.action_count());
    res.value = out.value;
    return res;
}

}  // namespace srp
