#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srp/losses.hpp"
#include "srp/net.hpp"
#include "srp/replay.hpp"
#include "srp/rng.hpp"
#include "srp/scene.hpp"
#include "srp/search.hpp"

namespace srp {

enum class Mode { kPearl, kExit, kRl };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

struct TrainConfig {
    int batch_size = 200;
    double lr = 1e-4;
    int k_steps = 5;
    double beta_im = 0.1;
    double beta_im_decay_frac = 0.25;  // linear decay to zero over this run fraction
    bool anneal_beta_is = true;        // beta_IS ramps to 1.0 across the run
    int learner_steps_per_episode = 1;
};

struct RunConfig {
    Mode mode = Mode::kPearl;
    int workers = 8;
    bool serial = false;  // one thread, fixed interleave, zeroed wall times
    int step_limit_train = 100;
    int step_limit_test = 200;
    int episodes = 3000;
    int checkpoint_every = 0;  // extra checkpoints each N episodes; final always kept
    std::uint64_t seed = 0;
    double eps_start = 1.0;
    double eps_end = 0.05;
    double eps_decay_frac = 0.2;
    ArchConfig arch = desk_arch();
    SearchConfig search;
    TrainConfig train;
    ReplayConfig replay;
};

void validate_run_config(const RunConfig& cfg);
std::string run_config_to_json(const RunConfig& cfg);
// Missing keys keep the values from `base`, so partial configs load cleanly.
RunConfig run_config_from_json(const std::string& text, const RunConfig& base = RunConfig{});

// Linear schedules over the episode index.
double epsilon_at(const RunConfig& cfg, int episode);
double beta_im_at(const RunConfig& cfg, int episode);
double beta_is_at(const RunConfig& cfg, int episode);

struct EpisodeRecord {
    std::string instance_id;
    std::vector<Experience> experiences;
    std::vector<double> snapshot_values;  // critic value per step under the episode params
    bool success = false;
    bool jammed = false;
    int length = 0;
    double reward_sum = 0.0;
};

struct EpisodeConfig {
    Mode mode = Mode::kPearl;
    int step_limit = 100;
    int k_steps = 5;
    double epsilon = 0.0;  // rl only
    SearchConfig search;
};

// Expert modes plan each step with search; rl samples the policy head with
// epsilon-greedy mixing. A null params pointer falls back to uniform priors.
EpisodeRecord run_episode(std::shared_ptr<const SceneInstance> inst,
                          std::shared_ptr<const ModelParams> params,
                          const EpisodeConfig& cfg, Rng& rng);

// Value head alone, mask-independent.
double state_value(const ModelParams& params, const SceneInstance& inst,
                   const LayoutState& s);

// Critic regression target: the search value when an expert drove the step,
// otherwise the k-step bootstrapped return.
double critic_target(const Experience& exp, double gamma);

struct MetricsRow {
    int episode = 0;
    Mode mode = Mode::kPearl;
    std::string instance_id;
    bool success = false;
    int length = 0;
    double sr_rolling = 0.0;
    double length_rolling = 0.0;
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double imitation_loss = 0.0;
    double wall_time_s = 0.0;
};

extern const char* const kMetricsHeader;
std::string metrics_csv_row(const MetricsRow& row);

// Rolling SR and Length over the trailing `window` episodes; failures count
// the step limit toward Length.
void fill_rolling(std::vector<MetricsRow>& rows, int window, int step_limit);

struct TrainResult {
    std::vector<MetricsRow> rows;
    std::string metrics_path;
    std::string checkpoint_path;
    ModelParams final_params;
    long learner_steps = 0;
    long skipped_batches = 0;
    long clamp_events = 0;
};

TrainResult train(const RunConfig& cfg,
                  const std::vector<std::shared_ptr<const SceneInstance>>& instances,
                  const std::string& out_dir);

struct CheckpointEval {
    double sr = 0.0;
    double mean_length = 0.0;
    std::string path;
};

// Highest SR, then shorter Length, then earliest.
int checkpoint_select(const std::vector<CheckpointEval>& evals);

}  // namespace srp
