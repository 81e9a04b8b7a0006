#pragma once

#include <memory>
#include <string>
#include <vector>

#include "srp/agents.hpp"
#include "srp/scene.hpp"

namespace srp {

struct EvalRow {
    std::string instance_id;
    bool success = false;
    int length = 0;  // rollout steps actually taken
    double reward_sum = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    int step_limit = 200;
    double sr = 0.0;
    double mean_length = 0.0;  // failures count the step limit
};

// Aggregates rows: SR is the success fraction and Length the mean sequence
// length with every failure charged the step limit.
EvalReport finalize_report(std::vector<EvalRow> rows, int step_limit);

// One deterministic rollout per instance.
EvalReport evaluate(const AgentHandle& agent,
                    const std::vector<std::shared_ptr<const SceneInstance>>& instances,
                    int step_limit = 200);

// Header: instance_id,success,length,reward_sum.
std::string eval_csv(const EvalReport& report);

}  // namespace srp
