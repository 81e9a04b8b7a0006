#pragma once

#include <vector>

#include "srp/evaluator.hpp"

namespace srp {

struct SearchConfig {
    int rounds = 50;
    double c_explore = 1.414;
    double gamma = 0.99;
    bool reuse_subtree = false;
};

void validate_search_config(const SearchConfig& cfg);

// prior/(n_sa+1) + C*sqrt(ln(n_s+1)/(n_sa+1)).
double uct_score(double prior, int n_sa, int n_s, double c);

struct EdgeStats {
    int action = -1;  // flat index
    double prior = 0.0;
    int n_sa = 0;
    int child = -1;  // node index, -1 while unexpanded
    double reward = 0.0;
};

struct SearchNode {
    LayoutState state;
    int n_s = 0;
    bool terminal = false;  // success, or jammed with no feasible action
    double v_leaf = 0.0;
    double v_backed = 0.0;
    std::vector<EdgeStats> edges;
};

struct ExpertDecision {
    Action action{0, Move::kUp};
    double expert_value = 0.0;
    std::vector<int> visit_counts;    // per flat action, unpadded
    std::vector<double> root_priors;  // per flat action, unpadded
};

class SearchTree {
public:
    SearchTree(const SceneInstance& inst, SearchConfig cfg);

    // Drops the whole tree and roots it at `s`.
    void reset_root(const LayoutState& s);

    // Re-roots at the child reached by `a` when present (subtree reuse),
    // otherwise resets to `next`.
    void advance_root(const Action& a, const LayoutState& next);

    // One selection-expansion-evaluation-backprop pass. No-op on a
    // terminal root.
    void run_simulation(Evaluator& eval);

    // cfg.rounds simulations plus the argmax extraction. Throws
    // JammedStateError when the root has no feasible action.
    ExpertDecision decide(Evaluator& eval);

    const SearchNode& root() const { return nodes_[root_]; }
    const std::vector<SearchNode>& nodes() const { return nodes_; }
    bool has_root() const { return root_ >= 0; }

    // Visit-count identity, prior normalization and the max-backup
    // identity on every node; throws std::logic_error on violation.
    void check_invariants() const;

private:
    int expand_node(const LayoutState& s, Evaluator& eval);
    int select_edge(const SearchNode& node) const;

    const SceneInstance& inst_;
    SearchConfig cfg_;
    std::vector<SearchNode> nodes_;
    int root_ = -1;
};

ExpertDecision run_search(const SceneInstance& inst, const LayoutState& s, Evaluator& eval,
                          const SearchConfig& cfg);

}  // namespace srp
