#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "srp/net.hpp"
#include "srp/scene.hpp"
#include "srp/search.hpp"

namespace srp {

enum class AgentKind { kApprentice, kExpert, kRandom };

std::string agent_kind_name(AgentKind kind);
AgentKind agent_kind_from_name(const std::string& name);

// Null params fall back to uniform priors for both network-backed kinds.
struct AgentHandle {
    AgentKind kind = AgentKind::kRandom;
    std::shared_ptr<const ModelParams> params;
    SearchConfig search;       // expert only
    std::uint64_t seed = 0;    // random only
};

struct PlanResult {
    std::vector<Action> actions;
    bool success = false;
    bool jammed = false;
    int length = 0;
    double reward_sum = 0.0;
};

// Greedy rollout: apprentice takes the policy argmax over feasible actions,
// expert plans each step with search, random draws uniformly. Apprentice and
// expert are deterministic; random is determined by the handle seed and the
// instance id.
PlanResult plan(const AgentHandle& agent, const SceneInstance& inst, int step_limit);

}  // namespace srp
