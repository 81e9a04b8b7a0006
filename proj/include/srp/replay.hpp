#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "srp/rng.hpp"
#include "srp/scene.hpp"
#include "srp/types.hpp"

namespace srp {

// One transition, stored compactly: the tensor is rebuilt from the
// instance and layout when the learner assembles a batch.
struct Experience {
    std::shared_ptr<const SceneInstance> instance;
    LayoutState state;
    int action = -1;
    double reward = 0.0;
    bool terminal = false;
    double expert_value = 0.0;
    int expert_action = -1;  // -1 when no expert drove the episode
    std::vector<double> rewards_ahead;
    double bootstrap = 0.0;
    double priority = 0.0;

    bool has_expert() const { return expert_action >= 0; }
};

struct ReplayConfig {
    int capacity = 10000;
    double alpha = 0.6;
    double beta_is = 0.4;
    double epsilon_p = 1e-3;
    bool is_correction = true;
};

void validate_replay_config(const ReplayConfig& cfg);

struct SampleBatch {
    std::vector<Experience> items;
    std::vector<std::uint64_t> ids;
    Eigen::VectorXd is_weights;
};

// Proportional prioritized replay over a FIFO ring. Stored priorities
// already carry the alpha exponent. Many producers may push while one
// learner samples and updates priorities.
class ReplayBuffer {
public:
    explicit ReplayBuffer(const ReplayConfig& cfg);

    void push(Experience exp, double critic_error);
    bool ready(int n) const;
    SampleBatch sample(int n, Rng& rng);
    // Ids no longer in the ring are skipped and counted.
    void update_priorities(const std::vector<std::uint64_t>& ids,
                           const std::vector<double>& critic_errors);

    void set_beta_is(double beta);
    double beta_is() const;
    int size() const;
    std::uint64_t total_pushed() const;
    std::uint64_t stale_updates() const;
    double priority_of(std::uint64_t id) const;  // 0 if evicted

private:
    double priority_from_error(double err) const;
    int slot_of(std::uint64_t id) const;

    ReplayConfig cfg_;
    mutable std::mutex mutex_;
    std::vector<Experience> ring_;
    std::vector<std::uint64_t> ring_ids_;
    int size_ = 0;
    std::uint64_t next_id_ = 0;
    std::uint64_t stale_updates_ = 0;
};

}  // namespace srp
