#include "srp/agents.hpp"

#include <stdexcept>

#include "srp/env.hpp"
#include "srp/evaluator.hpp"
#include "srp/rng.hpp"

namespace srp {

std::string agent_kind_name(AgentKind kind) {
    switch (kind) {
        case AgentKind::kApprentice: return "apprentice";
        case AgentKind::kExpert: return "expert";
        case AgentKind::kRandom: return "random";
    }
    throw std::invalid_argument("unknown agent kind");
}

AgentKind agent_kind_from_name(const std::string& name) {
    if (name == "apprentice") return AgentKind::kApprentice;
    if (name == "expert") return AgentKind::kExpert;
    if (name == "random") return AgentKind::kRandom;
    throw std::invalid_argument("unknown agent kind: " + name);
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Action argmax_prior(const Eigen::VectorXd& priors, const ActionMask& mask) {
    int best = -1;
    for (int a = 0; a < priors.size(); ++a) {
        if (!mask[a]) continue;
        if (best < 0 || priors[a] > priors[best]) best = a;
    }
    if (best < 0) throw std::logic_error("argmax over empty mask");
    return Action::from_flat(best);
}

}  // namespace

PlanResult plan(const AgentHandle& agent, const SceneInstance& inst, int step_limit) {
    if (step_limit < 0) throw std::invalid_argument("step_limit must be non-negative");
    PlanResult result;
    LayoutState s = initial_layout(inst);
    if (is_success(inst, s)) {
        result.success = true;
        return result;
    }

    std::unique_ptr<Evaluator> eval;
    if (agent.params) {
        eval = std::make_unique<NetEvaluator>(agent.params);
    } else {
        eval = std::make_unique<UniformEvaluator>();
    }
    SearchTree tree(inst, agent.search);
    if (agent.kind == AgentKind::kExpert) tree.reset_root(s);
    Rng rng(mix_seed(agent.seed, fnv1a(inst.id)));

    while (result.length < step_limit) {
        const ActionMask mask = feasible_actions(inst, s);
        if (!any_feasible(mask)) {
            result.jammed = true;
            break;
        }
        Action act{0, Move::kUp};
        switch (agent.kind) {
            case AgentKind::kApprentice: {
                const EvalResult res = eval->evaluate(inst, s, mask);
                act = argmax_prior(res.priors, mask);
                break;
            }
            case AgentKind::kExpert: {
                act = tree.decide(*eval).action;
                break;
            }
            case AgentKind::kRandom: {
                int feasible = 0;
                for (std::uint8_t m : mask) feasible += m;
                int pick = rng.uniform_index(feasible);
                for (int a = 0; a < static_cast<int>(mask.size()); ++a) {
                    if (mask[a] && pick-- == 0) {
                        act = Action::from_flat(a);
                        break;
                    }
                }
                break;
            }
        }
        const StepOutcome out = apply_action(inst, s, act, step_limit);
        result.actions.push_back(act);
        result.reward_sum += out.reward;
        ++result.length;
        if (agent.kind == AgentKind::kExpert) tree.advance_root(act, out.next);
        s = out.next;
        if (out.success) {
            result.success = true;
            break;
        }
    }
    return result;
}

}  // namespace srp
