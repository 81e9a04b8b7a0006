#include "srp/replay.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace srp {

void validate_replay_config(const ReplayConfig& cfg) {
    if (cfg.capacity < 1) throw std::invalid_argument("replay capacity must be positive");
    if (cfg.alpha < 0.0) throw std::invalid_argument("replay alpha must be non-negative");
    if (cfg.beta_is < 0.0 || cfg.beta_is > 1.0) {
        throw std::invalid_argument("replay beta_is must lie in [0, 1]");
    }
    if (cfg.epsilon_p <= 0.0) throw std::invalid_argument("replay epsilon_p must be positive");
}

ReplayBuffer::ReplayBuffer(const ReplayConfig& cfg) : cfg_(cfg) {
    validate_replay_config(cfg);
    ring_.resize(cfg.capacity);
    ring_ids_.assign(cfg.capacity, 0);
}

double ReplayBuffer::priority_from_error(double err) const {
    return std::pow(std::abs(err) + cfg_.epsilon_p, cfg_.alpha);
}

int ReplayBuffer::slot_of(std::uint64_t id) const {
    return static_cast<int>(id % static_cast<std::uint64_t>(cfg_.capacity));
}

void ReplayBuffer::push(Experience exp, double critic_error) {
    const double priority = priority_from_error(critic_error);
    if (!std::isfinite(priority)) throw std::invalid_argument("non-finite replay priority");
    std::lock_guard<std::mutex> lock(mutex_);
    exp.priority = priority;
    const int slot = slot_of(next_id_);
    ring_[slot] = std::move(exp);
    ring_ids_[slot] = next_id_;
    ++next_id_;
    if (size_ < cfg_.capacity) ++size_;
}

bool ReplayBuffer::ready(int n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return size_ >= n;
}

SampleBatch ReplayBuffer::sample(int n, Rng& rng) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    if (size_ < n) throw std::logic_error("replay buffer underfull");

    std::vector<double> prefix(size_);
    double total = 0.0;
    for (int i = 0; i < size_; ++i) {
        total += ring_[i].priority;
        prefix[i] = total;
    }

    SampleBatch batch;
    batch.items.reserve(n);
    batch.ids.reserve(n);
    batch.is_weights = Eigen::VectorXd::Ones(n);
    for (int draw = 0; draw < n; ++draw) {
        const double u = rng.uniform01() * total;
        int lo = 0;
        int hi = size_ - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (prefix[mid] <= u) lo = mid + 1; else hi = mid;
        }
        batch.items.push_back(ring_[lo]);
        batch.ids.push_back(ring_ids_[lo]);
        if (cfg_.is_correction) {
            const double p = ring_[lo].priority / total;
            batch.is_weights[draw] = std::pow(static_cast<double>(size_) * p, -cfg_.beta_is);
        }
    }
    if (cfg_.is_correction) {
        batch.is_weights /= batch.is_weights.maxCoeff();
    }
    return batch;
}

void ReplayBuffer::update_priorities(const std::vector<std::uint64_t>& ids,
                                     const std::vector<double>& critic_errors) {
    if (ids.size() != critic_errors.size()) {
        throw std::invalid_argument("ids and critic_errors must pair up");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const int slot = slot_of(ids[i]);
        if (ids[i] >= next_id_ || ring_ids_[slot] != ids[i]) {
            ++stale_updates_;
            continue;
        }
        ring_[slot].priority = priority_from_error(critic_errors[i]);
    }
}

void ReplayBuffer::set_beta_is(double beta) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta_is must lie in [0, 1]");
    cfg_.beta_is = beta;
}

double ReplayBuffer::beta_is() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cfg_.beta_is;
}

int ReplayBuffer::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return size_;
}

std::uint64_t ReplayBuffer::total_pushed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return next_id_;
}

std::uint64_t ReplayBuffer::stale_updates() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return stale_updates_;
}

double ReplayBuffer::priority_of(std::uint64_t id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const int slot = slot_of(id);
    if (id >= next_id_ || ring_ids_[slot] != id) return 0.0;
    return ring_[slot].priority;
}

}  // namespace srp
