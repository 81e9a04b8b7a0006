#include "srp/search.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "srp/errors.hpp"

namespace srp {

void validate_search_config(const SearchConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
    if (cfg.c_explore <= 0.0) throw std::invalid_argument("exploration constant must be positive");
    if (cfg.gamma <= 0.0 || cfg.gamma > 1.0) throw std::invalid_argument("gamma must be in (0, 1]");
}

double uct_score(double prior, int n_sa, int n_s, double c) {
    return prior / (n_sa + 1) + c * std::sqrt(std::log(n_s + 1.0) / (n_sa + 1));
}

SearchTree::SearchTree(const SceneInstance& inst, SearchConfig cfg) : inst_(inst), cfg_(cfg) {
    validate_search_config(cfg_);
}

int SearchTree::expand_node(const LayoutState& s, Evaluator& eval) {
    SearchNode node;
    node.state = s;
    node.n_s = 1;
    if (is_success(inst_, s)) {
        node.terminal = true;
    } else {
        ActionMask mask = feasible_actions(inst_, s);
        if (!any_feasible(mask)) {
            node.terminal = true;  // jammed: no moves, future value 0
        } else {
            EvalResult res = eval.evaluate(inst_, s, mask);
            node.v_leaf = res.value;
            node.v_backed = res.value;
            for (int a = 0; a < inst_.action_count(); ++a) {
                if (!mask[a]) continue;
                EdgeStats edge;
                edge.action = a;
                edge.prior = res.priors[a];
                node.edges.push_back(edge);
            }
        }
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

void SearchTree::reset_root(const LayoutState& s) {
    nodes_.clear();
    SearchNode node;
    node.state = s;
    node.terminal = is_success(inst_, s);
    nodes_.push_back(std::move(node));
    root_ = 0;
}

void SearchTree::advance_root(const Action& a, const LayoutState& next) {
    if (!cfg_.reuse_subtree || root_ < 0) {
        reset_root(next);
        return;
    }
    for (const EdgeStats& edge : nodes_[root_].edges) {
        if (edge.action == a.flat() && edge.child >= 0) {
            root_ = edge.child;
            return;
        }
    }
    reset_root(next);
}

int SearchTree::select_edge(const SearchNode& node) const {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(node.edges.size()); ++i) {
        const EdgeStats& e = node.edges[i];
        const double score = uct_score(e.prior, e.n_sa, node.n_s, cfg_.c_explore);
        if (score > best_score) {  // ties keep the lowest flat index
            best_score = score;
            best = i;
        }
    }
    return best;
}

void SearchTree::run_simulation(Evaluator& eval) {
    if (root_ < 0) throw std::logic_error("simulation without a root");
    if (nodes_[root_].terminal) return;

    // First simulation expands the root itself.
    if (nodes_[root_].n_s == 0) {
        const LayoutState s = nodes_[root_].state;
        const int fresh = expand_node(s, eval);
        std::swap(nodes_[root_], nodes_[fresh]);
        nodes_.pop_back();
        return;
    }

    std::vector<std::pair<int, int>> path;  // (node, edge index)
    int cur = root_;
    while (true) {
        SearchNode& node = nodes_[cur];
        if (node.terminal) break;
        const int ei = select_edge(node);
        if (ei < 0) break;
        if (node.edges[ei].child < 0) {
            StepOutcome out = apply_action(inst_, node.state, Action::from_flat(node.edges[ei].action));
            const int child = expand_node(out.next, eval);
            nodes_[cur].edges[ei].child = child;
            nodes_[cur].edges[ei].reward = out.reward;
            path.emplace_back(cur, ei);
            break;
        }
        path.emplace_back(cur, ei);
        cur = node.edges[ei].child;
    }

    // Backprop: bump counts, then refresh the max-backup values bottom-up.
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        SearchNode& node = nodes_[it->first];
        EdgeStats& edge = node.edges[it->second];
        edge.n_sa += 1;
        node.n_s += 1;
        double best = -std::numeric_limits<double>::infinity();
        bool any = false;
        for (const EdgeStats& e : node.edges) {
            if (e.child < 0) continue;
            any = true;
            best = std::max(best, e.reward + cfg_.gamma * nodes_[e.child].v_backed);
        }
        node.v_backed = any ? best : node.v_leaf;
    }
}

ExpertDecision SearchTree::decide(Evaluator& eval) {
    if (root_ < 0) throw std::logic_error("decide without a root");
    const SearchNode& pre = nodes_[root_];
    if (is_success(inst_, pre.state)) {
        throw std::invalid_argument("search from a success state");
    }
    {
        ActionMask mask = feasible_actions(inst_, pre.state);
        if (!any_feasible(mask)) throw JammedStateError("no feasible action at the search root");
    }

    for (int round = 0; round < cfg_.rounds; ++round) run_simulation(eval);

    // rounds=1 only expands the root; make sure at least one edge exists.
    auto has_child = [&] {
        for (const EdgeStats& e : nodes_[root_].edges) {
            if (e.child >= 0) return true;
        }
        return false;
    };
    while (!has_child()) run_simulation(eval);

    const SearchNode& root = nodes_[root_];
    ExpertDecision decision;
    decision.visit_counts.assign(inst_.action_count(), 0);
    decision.root_priors.assign(inst_.action_count(), 0.0);
    int best_action = -1;
    double best_e = -std::numeric_limits<double>::infinity();
    for (const EdgeStats& e : root.edges) {
        decision.visit_counts[e.action] = e.n_sa;
        decision.root_priors[e.action] = e.prior;
        if (e.child < 0) continue;
        const double score = e.reward + cfg_.gamma * nodes_[e.child].v_backed;
        if (score > best_e) {  // ties keep the lowest flat index
            best_e = score;
            best_action = e.action;
        }
    }
    decision.action = Action::from_flat(best_action);
    decision.expert_value = best_e;
    return decision;
}

void SearchTree::check_invariants() const {
    for (const SearchNode& node : nodes_) {
        if (node.n_s == 0) continue;  // unexpanded placeholder root
        int visits = 0;
        double prior_sum = 0.0;
        bool any_child = false;
        double best = -std::numeric_limits<double>::infinity();
        for (const EdgeStats& e : node.edges) {
            visits += e.n_sa;
            prior_sum += e.prior;
            if (e.child >= 0) {
                any_child = true;
                best = std::max(best, e.reward + cfg_.gamma * nodes_[e.child].v_backed);
            }
        }
        if (node.n_s != visits + 1) throw std::logic_error("visit-count identity violated");
        if (!node.edges.empty() && std::abs(prior_sum - 1.0) > 1e-9) {
            throw std::logic_error("root priors do not sum to 1");
        }
        const double want = any_child ? best : (node.terminal ? 0.0 : node.v_leaf);
        if (std::abs(node.v_backed - want) > 1e-9) {
            throw std::logic_error("max-backup identity violated");
        }
    }
}

ExpertDecision run_search(const SceneInstance& inst, const LayoutState& s, Evaluator& eval,
                          const SearchConfig& cfg) {
    SearchTree tree(inst, cfg);
    tree.reset_root(s);
    return tree.decide(eval);
}

}  // namespace srp
