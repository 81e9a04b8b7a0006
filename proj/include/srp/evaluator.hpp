#pragma once

#include <memory>

#include "srp/net.hpp"

namespace srp {

// Priors over the instance's real actions (length 6*K) plus a state value.
struct EvalResult {
    Eigen::VectorXd priors;
    double value = 0.0;
};

class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual EvalResult evaluate(const SceneInstance& inst, const LayoutState& s,
                                const ActionMask& mask) = 0;
};

// Uniform priors over feasible actions, value 0. Used by search tests and
// as the prior-free expert baseline.
class UniformEvaluator : public Evaluator {
public:
    EvalResult evaluate(const SceneInstance& inst, const LayoutState& s,
                        const ActionMask& mask) override;
};

// Wraps a parameter snapshot; pads the state tensor and mask to k_max, runs
// the net, and slices the padded distribution back to the real actions.
// Holds a private forward cache: one instance per worker thread.
class NetEvaluator : public Evaluator {
public:
    explicit NetEvaluator(std::shared_ptr<const ModelParams> params);

    EvalResult evaluate(const SceneInstance& inst, const LayoutState& s,
                        const ActionMask& mask) override;

    const ModelParams& params() const { return *params_; }

private:
    std::shared_ptr<const ModelParams> params_;
    ForwardCache cache_;
};

}  // namespace srp
