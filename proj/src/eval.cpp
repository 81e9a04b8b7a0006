#include "srp/eval.hpp"

#include <cstdio>
#include <stdexcept>

namespace srp {

EvalReport finalize_report(std::vector<EvalRow> rows, int step_limit) {
    if (rows.empty()) throw std::invalid_argument("cannot evaluate an empty instance list");
    if (step_limit < 1) throw std::invalid_argument("step_limit must be positive");
    EvalReport report;
    report.step_limit = step_limit;
    double successes = 0.0;
    double length_sum = 0.0;
    for (const EvalRow& row : rows) {
        successes += row.success ? 1.0 : 0.0;
        length_sum += row.success ? row.length : step_limit;
    }
    report.sr = successes / rows.size();
    report.mean_length = length_sum / rows.size();
    report.rows = std::move(rows);
    return report;
}

EvalReport evaluate(const AgentHandle& agent,
                    const std::vector<std::shared_ptr<const SceneInstance>>& instances,
                    int step_limit) {
    if (instances.empty()) throw std::invalid_argument("cannot evaluate an empty instance list");
    std::vector<EvalRow> rows;
    rows.reserve(instances.size());
    for (const auto& inst : instances) {
        const PlanResult res = plan(agent, *inst, step_limit);
        rows.push_back({inst->id, res.success, res.length, res.reward_sum});
    }
    return finalize_report(std::move(rows), step_limit);
}

std::string eval_csv(const EvalReport& report) {
    std::string out = "instance_id,success,length,reward_sum\n";
    char buf[160];
    for (const EvalRow& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f\n", row.instance_id.c_str(),
                      row.success ? 1 : 0, row.length, row.reward_sum);
        out += buf;
    }
    return out;
}

}  // namespace srp
