#include "srp/trainer.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "arch_json.hpp"
#include "srp/adam.hpp"
#include "srp/checkpoint.hpp"
#include "srp/env.hpp"
#include "srp/errors.hpp"
#include "srp/evaluator.hpp"

namespace srp {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kInitStream = 0x696e6974;
constexpr std::uint64_t kOrderStream = 0x6f726465;
constexpr std::uint64_t kLearnerStream = 0x4c000000;

}  // namespace

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::kPearl: return "pearl";
        case Mode::kExit: return "exit";
        case Mode::kRl: return "rl";
    }
    throw std::invalid_argument("unknown mode");
}

Mode mode_from_name(const std::string& name) {
    if (name == "pearl") return Mode::kPearl;
    if (name == "exit") return Mode::kExit;
    if (name == "rl") return Mode::kRl;
    throw std::invalid_argument("unknown mode: " + name);
}

void validate_run_config(const RunConfig& cfg) {
    if (cfg.workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (cfg.step_limit_train < 1 || cfg.step_limit_test < 1) {
        throw std::invalid_argument("step limits must be positive");
    }
    if (cfg.episodes < 0) throw std::invalid_argument("episodes must be non-negative");
    if (cfg.checkpoint_every < 0) throw std::invalid_argument("checkpoint_every must be non-negative");
    if (cfg.eps_start < 0.0 || cfg.eps_start > 1.0 || cfg.eps_end < 0.0 || cfg.eps_end > 1.0) {
        throw std::invalid_argument("epsilon bounds must lie in [0, 1]");
    }
    if (cfg.eps_decay_frac <= 0.0 || cfg.eps_decay_frac > 1.0) {
        throw std::invalid_argument("eps_decay_frac must lie in (0, 1]");
    }
    if (cfg.train.batch_size < 1) throw std::invalid_argument("batch_size must be positive");
    if (cfg.train.batch_size > cfg.replay.capacity) {
        throw std::invalid_argument("batch_size cannot exceed replay capacity");
    }
    if (cfg.train.lr <= 0.0) throw std::invalid_argument("lr must be positive");
    if (cfg.train.k_steps < 1) throw std::invalid_argument("k_steps must be positive");
    if (cfg.train.beta_im < 0.0) throw std::invalid_argument("beta_im must be non-negative");
    if (cfg.train.beta_im_decay_frac <= 0.0 || cfg.train.beta_im_decay_frac > 1.0) {
        throw std::invalid_argument("beta_im_decay_frac must lie in (0, 1]");
    }
    if (cfg.train.learner_steps_per_episode < 0) {
        throw std::invalid_argument("learner_steps_per_episode must be non-negative");
    }
    validate_arch(cfg.arch);
    validate_search_config(cfg.search);
    validate_replay_config(cfg.replay);
}

std::string run_config_to_json(const RunConfig& cfg) {
    json j{{"mode", mode_name(cfg.mode)},
           {"workers", cfg.workers},
           {"serial", cfg.serial},
           {"step_limit_train", cfg.step_limit_train},
           {"step_limit_test", cfg.step_limit_test},
           {"episodes", cfg.episodes},
           {"checkpoint_every", cfg.checkpoint_every},
           {"seed", cfg.seed},
           {"eps_start", cfg.eps_start},
           {"eps_end", cfg.eps_end},
           {"eps_decay_frac", cfg.eps_decay_frac},
           {"arch", arch_to_json(cfg.arch)},
           {"search",
            {{"rounds", cfg.search.rounds},
             {"c_explore", cfg.search.c_explore},
             {"gamma", cfg.search.gamma},
             {"reuse_subtree", cfg.search.reuse_subtree}}},
           {"train",
            {{"batch_size", cfg.train.batch_size},
             {"lr", cfg.train.lr},
             {"k_steps", cfg.train.k_steps},
             {"beta_im", cfg.train.beta_im},
             {"beta_im_decay_frac", cfg.train.beta_im_decay_frac},
             {"anneal_beta_is", cfg.train.anneal_beta_is},
             {"learner_steps_per_episode", cfg.train.learner_steps_per_episode}}},
           {"replay",
            {{"capacity", cfg.replay.capacity},
             {"alpha", cfg.replay.alpha},
             {"beta_is", cfg.replay.beta_is},
             {"epsilon_p", cfg.replay.epsilon_p},
             {"is_correction", cfg.replay.is_correction}}}};
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text, const RunConfig& base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("run config: ") + e.what());
    }
    RunConfig cfg = base;
    try {
        if (j.contains("mode")) cfg.mode = mode_from_name(j.at("mode").get<std::string>());
        cfg.workers = j.value("workers", cfg.workers);
        cfg.serial = j.value("serial", cfg.serial);
        cfg.step_limit_train = j.value("step_limit_train", cfg.step_limit_train);
        cfg.step_limit_test = j.value("step_limit_test", cfg.step_limit_test);
        cfg.episodes = j.value("episodes", cfg.episodes);
        cfg.checkpoint_every = j.value("checkpoint_every", cfg.checkpoint_every);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.eps_start = j.value("eps_start", cfg.eps_start);
        cfg.eps_end = j.value("eps_end", cfg.eps_end);
        cfg.eps_decay_frac = j.value("eps_decay_frac", cfg.eps_decay_frac);
        if (j.contains("arch")) cfg.arch = arch_from_json(j.at("arch"));
        if (j.contains("search")) {
            const json& s = j.at("search");
            cfg.search.rounds = s.value("rounds", cfg.search.rounds);
            cfg.search.c_explore = s.value("c_explore", cfg.search.c_explore);
            cfg.search.gamma = s.value("gamma", cfg.search.gamma);
            cfg.search.reuse_subtree = s.value("reuse_subtree", cfg.search.reuse_subtree);
        }
        if (j.contains("train")) {
            const json& t = j.at("train");
            cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
            cfg.train.lr = t.value("lr", cfg.train.lr);
            cfg.train.k_steps = t.value("k_steps", cfg.train.k_steps);
            cfg.train.beta_im = t.value("beta_im", cfg.train.beta_im);
            cfg.train.beta_im_decay_frac =
                t.value("beta_im_decay_frac", cfg.train.beta_im_decay_frac);
            cfg.train.anneal_beta_is = t.value("anneal_beta_is", cfg.train.anneal_beta_is);
            cfg.train.learner_steps_per_episode =
                t.value("learner_steps_per_episode", cfg.train.learner_steps_per_episode);
        }
        if (j.contains("replay")) {
            const json& r = j.at("replay");
            cfg.replay.capacity = r.value("capacity", cfg.replay.capacity);
            cfg.replay.alpha = r.value("alpha", cfg.replay.alpha);
            cfg.replay.beta_is = r.value("beta_is", cfg.replay.beta_is);
            cfg.replay.epsilon_p = r.value("epsilon_p", cfg.replay.epsilon_p);
            cfg.replay.is_correction = r.value("is_correction", cfg.replay.is_correction);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("run config: ") + e.what());
    }
    validate_run_config(cfg);
    return cfg;
}

double epsilon_at(const RunConfig& cfg, int episode) {
    const double span = cfg.eps_decay_frac * cfg.episodes;
    if (span <= 0.0 || episode >= span) return cfg.eps_end;
    return cfg.eps_start + (cfg.eps_end - cfg.eps_start) * (episode / span);
}

double beta_im_at(const RunConfig& cfg, int episode) {
    const double span = cfg.train.beta_im_decay_frac * cfg.episodes;
    if (span <= 0.0 || episode >= span) return 0.0;
    return cfg.train.beta_im * (1.0 - episode / span);
}

double beta_is_at(const RunConfig& cfg, int episode) {
    if (!cfg.train.anneal_beta_is) return cfg.replay.beta_is;
    if (cfg.episodes <= 1) return 1.0;
    const double progress = std::min(1.0, episode / static_cast<double>(cfg.episodes - 1));
    return cfg.replay.beta_is + (1.0 - cfg.replay.beta_is) * progress;
}

double state_value(const ModelParams& params, const SceneInstance& inst,
                   const LayoutState& s) {
    const StateTensor input = build_net_input(inst, s, params.arch.k_max);
    ActionMask open(static_cast<std::size_t>(params.arch.action_count()), 1);
    return forward(params, input, open).value;
}

double critic_target(const Experience& exp, double gamma) {
    if (exp.has_expert()) return exp.expert_value;
    return compute_advantage(exp.rewards_ahead, exp.bootstrap, 0.0, gamma);
}

namespace {

Action uniform_feasible(const ActionMask& mask, Rng& rng) {
    int feasible = 0;
    for (std::uint8_t m : mask) feasible += m;
    int pick = rng.uniform_index(feasible);
    for (int a = 0; a < static_cast<int>(mask.size()); ++a) {
        if (mask[a] && pick-- == 0) return Action::from_flat(a);
    }
    throw std::logic_error("uniform_feasible ran past the mask");
}

Action sample_categorical(const Eigen::VectorXd& probs, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    int last = -1;
    for (int a = 0; a < probs.size(); ++a) {
        if (probs[a] <= 0.0) continue;
        last = a;
        acc += probs[a];
        if (u < acc) return Action::from_flat(a);
    }
    if (last < 0) throw NoFeasibleActionError("no probability mass to sample");
    return Action::from_flat(last);
}

}  // namespace

EpisodeRecord run_episode(std::shared_ptr<const SceneInstance> inst,
                          std::shared_ptr<const ModelParams> params,
                          const EpisodeConfig& cfg, Rng& rng) {
    validate_search_config(cfg.search);
    if (cfg.step_limit < 1) throw std::invalid_argument("step_limit must be positive");
    if (cfg.k_steps < 1) throw std::invalid_argument("k_steps must be positive");

    EpisodeRecord rec;
    rec.instance_id = inst->id;
    LayoutState s = initial_layout(*inst);
    if (is_success(*inst, s)) {
        rec.success = true;
        return rec;
    }

    std::unique_ptr<Evaluator> eval;
    if (params) {
        eval = std::make_unique<NetEvaluator>(params);
    } else {
        eval = std::make_unique<UniformEvaluator>();
    }

    const bool expert_driven = cfg.mode != Mode::kRl;
    SearchTree tree(*inst, cfg.search);
    if (expert_driven) tree.reset_root(s);

    std::vector<double> rewards;
    std::vector<double> expert_values;
    std::vector<double> values;

    while (true) {
        const ActionMask mask = feasible_actions(*inst, s);
        if (!any_feasible(mask)) {
            rec.jammed = true;
            break;
        }
        Action act{0, Move::kUp};
        double v_now = 0.0;
        if (expert_driven) {
            const ExpertDecision dec = tree.decide(*eval);
            act = dec.action;
            if (params) v_now = state_value(*params, *inst, s);
            Experience e;
            e.instance = inst;
            e.state = s;
            e.action = act.flat();
            e.expert_value = dec.expert_value;
            e.expert_action = act.flat();
            rec.experiences.push_back(std::move(e));
            expert_values.push_back(dec.expert_value);
        } else {
            const EvalResult res = eval->evaluate(*inst, s, mask);
            v_now = res.value;
            if (rng.uniform01() < cfg.epsilon) {
                act = uniform_feasible(mask, rng);
            } else {
                act = sample_categorical(res.priors, rng);
            }
            Experience e;
            e.instance = inst;
            e.state = s;
            e.action = act.flat();
            rec.experiences.push_back(std::move(e));
        }
        values.push_back(v_now);

        const StepOutcome out = apply_action(*inst, s, act, cfg.step_limit);
        rec.experiences.back().reward = out.reward;
        rewards.push_back(out.reward);
        rec.reward_sum += out.reward;
        ++rec.length;
        if (expert_driven) tree.advance_root(act, out.next);
        s = out.next;
        if (out.success) {
            rec.success = true;
            break;
        }
        if (rec.length >= cfg.step_limit) break;
    }

    const bool terminal_env = rec.success || rec.jammed;
    double tail_value = 0.0;
    if (!terminal_env && params) tail_value = state_value(*params, *inst, s);

    const int total = rec.length;
    for (int t = 0; t < total; ++t) {
        Experience& e = rec.experiences[t];
        const int m = std::min(cfg.k_steps, total - t);
        e.rewards_ahead.assign(rewards.begin() + t, rewards.begin() + t + m);
        if (t + m < total) {
            e.bootstrap = expert_driven ? expert_values[t + m] : values[t + m];
        } else {
            e.bootstrap = terminal_env ? 0.0 : tail_value;
        }
        e.terminal = (t == total - 1) && terminal_env;
    }
    rec.snapshot_values = std::move(values);
    return rec;
}

const char* const kMetricsHeader =
    "episode,mode,instance_id,success,length,sr_rolling,length_rolling,"
    "policy_loss,value_loss,imitation_loss,wall_time_s";

std::string metrics_csv_row(const MetricsRow& row) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%d,%s,%s,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f",
                  row.episode, mode_name(row.mode).c_str(), row.instance_id.c_str(),
                  row.success ? 1 : 0, row.length, row.sr_rolling, row.length_rolling,
                  row.policy_loss, row.value_loss, row.imitation_loss, row.wall_time_s);
    return std::string(buf);
}

void fill_rolling(std::vector<MetricsRow>& rows, int window, int step_limit) {
    if (window < 1) throw std::invalid_argument("rolling window must be positive");
    double sr_sum = 0.0;
    double len_sum = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double len_i = rows[i].success ? rows[i].length : step_limit;
        sr_sum += rows[i].success ? 1.0 : 0.0;
        len_sum += len_i;
        if (i >= static_cast<std::size_t>(window)) {
            const MetricsRow& old = rows[i - window];
            sr_sum -= old.success ? 1.0 : 0.0;
            len_sum -= old.success ? old.length : step_limit;
        }
        const double n = std::min<double>(window, i + 1);
        rows[i].sr_rolling = sr_sum / n;
        rows[i].length_rolling = len_sum / n;
    }
}

namespace {

struct Learner {
    const RunConfig& cfg;
    ModelParams params;
    Adam opt;
    ReplayBuffer replay;
    long steps = 0;
    long skipped = 0;
    long clamps = 0;

    Learner(const RunConfig& run_cfg, Rng& init_rng)
        : cfg(run_cfg),
          params(init_params(run_cfg.arch, init_rng)),
          opt(params.values.size(),
              AdamConfig{run_cfg.train.lr, 0.9, 0.999, 1e-8}),
          replay(run_cfg.replay) {}

    LossTerms terms_at(int episode) const {
        LossTerms t;
        switch (cfg.mode) {
            case Mode::kPearl:
                t.policy = true;
                t.value = true;
                t.beta_im = beta_im_at(cfg, episode);
                break;
            case Mode::kExit:
                t.policy = false;
                t.value = true;
                t.beta_im = 1.0;
                break;
            case Mode::kRl:
                t.policy = true;
                t.value = true;
                t.beta_im = 0.0;
                break;
        }
        return t;
    }

    std::optional<LossStats> step(int episode, Rng& rng) {
        const int n = cfg.train.batch_size;
        if (!replay.ready(n)) return std::nullopt;
        if (cfg.train.anneal_beta_is) replay.set_beta_is(beta_is_at(cfg, episode));
        SampleBatch batch = replay.sample(n, rng);

        const double gamma = cfg.search.gamma;
        std::vector<TrainItem> items(n);
        std::vector<double> errors(n);
        for (int i = 0; i < n; ++i) {
            const Experience& e = batch.items[i];
            TrainItem& it = items[i];
            it.state = build_net_input(*e.instance, e.state, cfg.arch.k_max);
            it.mask = pad_action_mask(feasible_actions(*e.instance, e.state), cfg.arch.k_max);
            it.action = e.action;
            it.expert_action = e.expert_action;
            const double v_now = forward(params, it.state, it.mask).value;
            const double g = compute_advantage(e.rewards_ahead, e.bootstrap, 0.0, gamma);
            it.advantage = g - v_now;
            it.target_value = critic_target(e, gamma);
            it.is_weight = batch.is_weights[i];
            errors[i] = v_now - it.target_value;
        }

        Eigen::VectorXd grad = Eigen::VectorXd::Zero(params.values.size());
        const LossStats stats = batch_losses(params, items, terms_at(episode), &grad);
        clamps += stats.clamp_events;
        if (opt.step(params, grad)) {
            replay.update_priorities(batch.ids, errors);
            ++steps;
        } else {
            ++skipped;
        }
        return stats;
    }
};

void push_record(ReplayBuffer& replay, const EpisodeRecord& rec, double gamma) {
    for (std::size_t t = 0; t < rec.experiences.size(); ++t) {
        const Experience& e = rec.experiences[t];
        replay.push(e, rec.snapshot_values[t] - critic_target(e, gamma));
    }
}

std::string checkpoint_name(int episode) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "checkpoint_ep%06d.srpc", episode);
    return std::string(buf);
}

}  // namespace

TrainResult train(const RunConfig& cfg,
                  const std::vector<std::shared_ptr<const SceneInstance>>& instances,
                  const std::string& out_dir) {
    validate_run_config(cfg);
    if (instances.empty()) throw std::invalid_argument("training needs a non-empty dataset");
    for (const auto& inst : instances) {
        if (inst->grid_size != cfg.arch.grid_size) {
            throw std::invalid_argument("instance " + inst->id + " grid does not match arch");
        }
        if (inst->object_count() > cfg.arch.k_max) {
            throw std::invalid_argument("instance " + inst->id + " exceeds arch k_max");
        }
    }
    std::filesystem::create_directories(out_dir);

    Rng init_rng(mix_seed(cfg.seed, kInitStream));
    Learner learner(cfg, init_rng);

    std::vector<int> order(instances.size());
    std::iota(order.begin(), order.end(), 0);
    Rng order_rng(mix_seed(cfg.seed, kOrderStream));
    std::size_t order_pos = order.size();
    auto next_instance = [&]() {
        if (order_pos >= order.size()) {
            for (std::size_t i = order.size() - 1; i > 0; --i) {
                std::swap(order[i], order[order_rng.uniform_index(static_cast<int>(i) + 1)]);
            }
            order_pos = 0;
        }
        return instances[order[order_pos++]];
    };

    auto episode_cfg = [&](int ep) {
        EpisodeConfig e;
        e.mode = cfg.mode;
        e.step_limit = cfg.step_limit_train;
        e.k_steps = cfg.train.k_steps;
        e.epsilon = epsilon_at(cfg, ep);
        e.search = cfg.search;
        return e;
    };

    std::vector<MetricsRow> rows(cfg.episodes);
    std::vector<std::pair<int, LossStats>> loss_log;
    std::atomic<long> learner_attempts{0};

    if (cfg.serial) {
        for (int ep = 0; ep < cfg.episodes; ++ep) {
            auto inst = next_instance();
            Rng ep_rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(ep)));
            auto snap = std::make_shared<const ModelParams>(learner.params);
            const EpisodeRecord rec = run_episode(inst, snap, episode_cfg(ep), ep_rng);
            push_record(learner.replay, rec, cfg.search.gamma);
            for (int j = 0; j < cfg.train.learner_steps_per_episode; ++j) {
                Rng lrng(mix_seed(cfg.seed,
                                  kLearnerStream + learner_attempts.fetch_add(1)));
                if (auto st = learner.step(ep, lrng)) loss_log.emplace_back(ep, *st);
            }
            MetricsRow& row = rows[ep];
            row.episode = ep;
            row.mode = cfg.mode;
            row.instance_id = rec.instance_id;
            row.success = rec.success;
            row.length = rec.length;
            row.wall_time_s = 0.0;
            if (cfg.checkpoint_every > 0 && (ep + 1) % cfg.checkpoint_every == 0) {
                save_checkpoint(learner.params, out_dir + "/" + checkpoint_name(ep + 1));
            }
        }
    } else {
        std::atomic<int> next_ep{0};
        std::atomic<int> episodes_done{0};
        std::atomic<bool> workers_done{false};
        std::mutex order_mu;
        std::mutex snap_mu;
        std::mutex log_mu;
        auto snapshot = std::make_shared<const ModelParams>(learner.params);

        auto worker_fn = [&]() {
            while (true) {
                const int ep = next_ep.fetch_add(1);
                if (ep >= cfg.episodes) break;
                std::shared_ptr<const SceneInstance> inst;
                {
                    std::lock_guard<std::mutex> lock(order_mu);
                    inst = next_instance();
                }
                std::shared_ptr<const ModelParams> snap;
                {
                    std::lock_guard<std::mutex> lock(snap_mu);
                    snap = snapshot;
                }
                Rng ep_rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(ep)));
                const auto t0 = std::chrono::steady_clock::now();
                const EpisodeRecord rec = run_episode(inst, snap, episode_cfg(ep), ep_rng);
                push_record(learner.replay, rec, cfg.search.gamma);
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
                MetricsRow& row = rows[ep];
                row.episode = ep;
                row.mode = cfg.mode;
                row.instance_id = rec.instance_id;
                row.success = rec.success;
                row.length = rec.length;
                row.wall_time_s = secs;
                episodes_done.fetch_add(1);
            }
        };

        auto learner_fn = [&]() {
            long done_steps = 0;
            while (true) {
                const bool finished = workers_done.load();
                const int done = episodes_done.load();
                const long target =
                    static_cast<long>(cfg.train.learner_steps_per_episode) * done;
                if (done_steps >= target) {
                    if (finished) break;
                    std::this_thread::sleep_for(std::chrono::milliseconds(1));
                    continue;
                }
                const int ep_stamp = std::min(done, cfg.episodes) - 1;
                Rng lrng(mix_seed(cfg.seed,
                                  kLearnerStream + learner_attempts.fetch_add(1)));
                auto st = learner.step(std::max(ep_stamp, 0), lrng);
                if (!st) {
                    if (finished) break;
                    std::this_thread::sleep_for(std::chrono::milliseconds(1));
                    continue;
                }
                ++done_steps;
                {
                    std::lock_guard<std::mutex> lock(log_mu);
                    loss_log.emplace_back(std::max(ep_stamp, 0), *st);
                }
                {
                    std::lock_guard<std::mutex> lock(snap_mu);
                    snapshot = std::make_shared<const ModelParams>(learner.params);
                }
            }
        };

        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker_fn);
        std::thread learner_thread(learner_fn);

        int next_ckpt = cfg.checkpoint_every;
        while (episodes_done.load() < cfg.episodes) {
            if (cfg.checkpoint_every > 0 && episodes_done.load() >= next_ckpt) {
                std::shared_ptr<const ModelParams> snap;
                {
                    std::lock_guard<std::mutex> lock(snap_mu);
                    snap = snapshot;
                }
                save_checkpoint(*snap, out_dir + "/" + checkpoint_name(next_ckpt));
                next_ckpt += cfg.checkpoint_every;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
        for (auto& t : pool) t.join();
        workers_done.store(true);
        learner_thread.join();
    }

    std::vector<double> pol(cfg.episodes, 0.0);
    std::vector<double> val(cfg.episodes, 0.0);
    std::vector<double> imi(cfg.episodes, 0.0);
    std::vector<int> cnt(cfg.episodes, 0);
    for (const auto& [ep, st] : loss_log) {
        pol[ep] += st.policy;
        val[ep] += st.value;
        imi[ep] += st.imitation;
        ++cnt[ep];
    }
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        if (cnt[ep] == 0) continue;
        rows[ep].policy_loss = pol[ep] / cnt[ep];
        rows[ep].value_loss = val[ep] / cnt[ep];
        rows[ep].imitation_loss = imi[ep] / cnt[ep];
    }
    fill_rolling(rows, 100, cfg.step_limit_train);

    TrainResult result;
    result.metrics_path = out_dir + "/metrics.csv";
    {
        std::ofstream out(result.metrics_path);
        if (!out) throw std::runtime_error("cannot write " + result.metrics_path);
        out << kMetricsHeader << "\n";
        for (const MetricsRow& row : rows) out << metrics_csv_row(row) << "\n";
    }
    result.checkpoint_path = out_dir + "/checkpoint_final.srpc";
    save_checkpoint(learner.params, result.checkpoint_path);
    result.rows = std::move(rows);
    result.final_params = std::move(learner.params);
    result.learner_steps = learner.steps;
    result.skipped_batches = learner.skipped;
    result.clamp_events = learner.clamps;
    return result;
}

int checkpoint_select(const std::vector<CheckpointEval>& evals) {
    if (evals.empty()) throw std::invalid_argument("no checkpoints to select from");
    int best = 0;
    for (int i = 1; i < static_cast<int>(evals.size()); ++i) {
        if (evals[i].sr > evals[best].sr) {
            best = i;
        } else if (evals[i].sr == evals[best].sr &&
                   evals[i].mean_length < evals[best].mean_length) {
            best = i;
        }
    }
    return best;
}

}  // namespace srp
