#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "srp/agents.hpp"
#include "srp/checkpoint.hpp"
#include "srp/env.hpp"
#include "srp/eval.hpp"
#include "srp/generator.hpp"
#include "srp/instance_io.hpp"
#include "srp/render.hpp"
#include "srp/trainer.hpp"

namespace {

using srp::AgentHandle;
using srp::SceneInstance;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::shared_ptr<const SceneInstance>> load_dataset(const std::string& dir) {
    std::vector<std::shared_ptr<const SceneInstance>> out;
    for (const std::string& path : srp::list_instances(dir)) {
        out.push_back(std::make_shared<const SceneInstance>(srp::load_instance(path)));
    }
    if (out.empty()) throw std::runtime_error("no instances found in " + dir);
    return out;
}

void parse_range(const std::string& text, int& lo, int& hi) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        lo = hi = std::stoi(text);
        return;
    }
    lo = std::stoi(text.substr(0, dots));
    hi = std::stoi(text.substr(dots + 2));
}

const char* move_label(srp::Move m) {
    switch (m) {
        case srp::Move::kUp: return "Up";
        case srp::Move::kDown: return "Down";
        case srp::Move::kLeft: return "Left";
        case srp::Move::kRight: return "Right";
        case srp::Move::kRotCw: return "RotCW";
        case srp::Move::kRotCcw: return "RotCCW";
    }
    return "?";
}

struct AgentFlags {
    std::string kind = "apprentice";
    std::string checkpoint;
    int rounds = 50;
    std::uint64_t seed = 0;
};

void add_agent_flags(CLI::App* cmd, AgentFlags& flags, const std::string& default_kind) {
    flags.kind = default_kind;
    cmd->add_option("--agent", flags.kind, "apprentice, expert, or random")
        ->check(CLI::IsMember({"apprentice", "expert", "random"}));
    cmd->add_option("--checkpoint", flags.checkpoint, "model checkpoint (.srpc)");
    cmd->add_option("--rounds", flags.rounds, "search rounds for the expert agent");
    cmd->add_option("--seed", flags.seed, "seed for the random agent");
}

AgentHandle make_agent(const AgentFlags& flags) {
    AgentHandle agent;
    agent.kind = srp::agent_kind_from_name(flags.kind);
    agent.search.rounds = flags.rounds;
    agent.seed = flags.seed;
    if (!flags.checkpoint.empty()) {
        agent.params = std::make_shared<const srp::ModelParams>(
            srp::load_checkpoint(flags.checkpoint));
    }
    return agent;
}

int cmd_gen(const std::string& out_dir, int rooms, int grid, const std::string& objects,
            const std::string& rect, double l_prob, int pillars, int walk_rounds,
            std::uint64_t seed) {
    srp::GeneratorConfig cfg;
    cfg.grid_size = grid;
    parse_range(objects, cfg.k_min, cfg.k_max);
    parse_range(rect, cfg.rect_min, cfg.rect_max);
    cfg.l_shape_prob = l_prob;
    cfg.pillar_count = pillars;
    cfg.walk_rounds = walk_rounds;
    srp::validate_config(cfg);

    std::vector<SceneInstance> instances;
    std::vector<std::string> ids;
    for (int i = 0; i < rooms; ++i) {
        instances.push_back(srp::generate_instance(cfg, seed + i));
        ids.push_back(instances.back().id);
    }
    const std::vector<bool> is_test = srp::split_is_test(ids);

    std::filesystem::create_directories(out_dir + "/train");
    std::filesystem::create_directories(out_dir + "/test");
    int train_count = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const std::string sub = is_test[i] ? "/test/" : "/train/";
        srp::save_instance(instances[i], out_dir + sub + ids[i] + ".json");
        train_count += is_test[i] ? 0 : 1;
    }
    std::cout << "wrote " << train_count << " train / " << (rooms - train_count)
              << " test instances to " << out_dir << "\n";
    return 0;
}

int cmd_train(const std::string& data_dir, const std::string& out_dir,
              const std::string& config_path, srp::RunConfig flag_cfg,
              bool arch_flagged) {
    bool config_has_arch = false;
    srp::RunConfig cfg = flag_cfg;
    if (!config_path.empty()) {
        const std::string text = slurp_file(config_path);
        config_has_arch = nlohmann::json::parse(text).contains("arch");
        cfg = srp::run_config_from_json(text, flag_cfg);
    }

    auto dataset = load_dataset(data_dir);
    if (!config_has_arch && !arch_flagged) {
        // Fit the default architecture to the dataset at hand.
        int k_max = 0;
        for (const auto& inst : dataset) k_max = std::max(k_max, inst->object_count());
        cfg.arch.grid_size = dataset.front()->grid_size;
        cfg.arch.k_max = k_max;
    }

    const srp::TrainResult res = srp::train(cfg, dataset, out_dir);
    std::cout << "episodes " << res.rows.size() << "\n";
    if (!res.rows.empty()) {
        std::cout << "final rolling SR " << res.rows.back().sr_rolling << ", Length "
                  << res.rows.back().length_rolling << "\n";
    }
    std::cout << "metrics " << res.metrics_path << "\ncheckpoint " << res.checkpoint_path
              << "\n";
    return 0;
}

int cmd_eval(const std::string& data_dir, const AgentFlags& flags, int limit,
             const std::string& out_path) {
    const AgentHandle agent = make_agent(flags);
    const srp::EvalReport report = srp::evaluate(agent, load_dataset(data_dir), limit);
    const std::string csv = srp::eval_csv(report);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << csv;
    }
    std::cerr << "SR " << report.sr << " Length " << report.mean_length << " over "
              << report.rows.size() << " instances\n";
    return 0;
}

int cmd_plan(const std::string& instance_path, const AgentFlags& flags, int limit) {
    const SceneInstance inst = srp::load_instance(instance_path);
    const srp::PlanResult res = srp::plan(make_agent(flags), inst, limit);
    for (const srp::Action& act : res.actions) {
        std::cout << act.object_index << " " << move_label(act.move) << "\n";
    }
    char line[96];
    std::snprintf(line, sizeof line, "success %d length %d reward %.6f\n",
                  res.success ? 1 : 0, res.length, res.reward_sum);
    std::cout << line;
    return 0;
}

std::vector<srp::Action> read_actions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<srp::Action> actions;
    int flat = 0;
    while (in >> flat) actions.push_back(srp::Action::from_flat(flat));
    return actions;
}

int cmd_render(const std::string& instance_path, const AgentFlags& flags, int limit,
               const std::string& out_dir, const std::string& actions_path, int scale,
               bool ascii) {
    const SceneInstance inst = srp::load_instance(instance_path);
    std::vector<srp::Action> actions;
    if (!actions_path.empty()) {
        actions = read_actions(actions_path);
    } else {
        actions = srp::plan(make_agent(flags), inst, limit).actions;
    }
    if (ascii) {
        srp::LayoutState s = srp::initial_layout(inst);
        std::cout << srp::ascii_frame(inst, s);
        for (const srp::Action& act : actions) {
            s = srp::apply_action(inst, s, act).next;
            std::cout << "\n" << srp::ascii_frame(inst, s);
        }
        return 0;
    }
    if (out_dir.empty()) throw std::runtime_error("render needs --out or --ascii");
    const auto paths = srp::render_plan(inst, actions, out_dir, scale);
    std::cout << "wrote " << paths.size() << " frames to " << out_dir << "\n";
    return 0;
}

int cmd_stats(const std::string& data_dir) {
    const srp::DatasetStats stats = srp::dataset_stats(srp::list_instances(data_dir));
    std::cout << "instances " << stats.count << "\n";
    char line[64];
    std::snprintf(line, sizeof line, "mean objects %.6f\n", stats.k_mean);
    std::cout << line;
    for (const auto& [k, n] : stats.k_histogram) {
        std::cout << "K=" << k << ": " << n << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scene rearrangement planning toolkit"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate a solvable instance dataset");
    std::string gen_out;
    int gen_rooms = 100;
    int gen_grid = 16;
    std::string gen_objects = "1..4";
    std::string gen_rect = "1..3";
    double gen_l_prob = 0.25;
    int gen_pillars = 0;
    int gen_walk = 1000;
    std::uint64_t gen_seed = 0;
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--rooms", gen_rooms, "number of instances");
    gen->add_option("--grid", gen_grid, "grid size N");
    gen->add_option("--objects", gen_objects, "object count range, e.g. 2..4");
    gen->add_option("--rect", gen_rect, "rectangle side range in cells");
    gen->add_option("--l-prob", gen_l_prob, "probability of L-shaped objects");
    gen->add_option("--pillars", gen_pillars, "interior pillar cells");
    gen->add_option("--walk-rounds", gen_walk, "scramble walk rounds");
    gen->add_option("--seed", gen_seed, "base seed");

    auto* train = app.add_subcommand("train", "Train an agent");
    std::string train_data;
    std::string train_out;
    std::string train_config;
    std::string train_mode = "pearl";
    srp::RunConfig train_cfg;
    train->add_option("--data", train_data, "training instance directory")->required();
    train->add_option("--out", train_out, "output directory")->required();
    train->add_option("--config", train_config,
                      "run config JSON; its keys override the flags");
    train->add_option("--mode", train_mode, "pearl, exit, or rl")
        ->check(CLI::IsMember({"pearl", "exit", "rl"}));
    train->add_option("--episodes", train_cfg.episodes, "episode budget");
    train->add_option("--seed", train_cfg.seed, "run seed");
    train->add_option("--workers", train_cfg.workers, "data worker threads");
    auto* serial_flag =
        train->add_flag("--serial", train_cfg.serial, "single-thread deterministic mode");
    train->add_option("--search-rounds", train_cfg.search.rounds, "expert search rounds");
    train->add_option("--batch", train_cfg.train.batch_size, "learner batch size");
    auto* arch_grid_opt = train->add_option("--arch-grid", train_cfg.arch.grid_size,
                                            "network input grid (default: fit data)");
    auto* arch_k_opt = train->add_option("--arch-kmax", train_cfg.arch.k_max,
                                         "network object capacity (default: fit data)");
    (void)serial_flag;

    auto* eval = app.add_subcommand("eval", "Evaluate an agent on a dataset");
    std::string eval_data;
    std::string eval_out;
    int eval_limit = 200;
    AgentFlags eval_agent;
    eval->add_option("--data", eval_data, "instance directory")->required();
    eval->add_option("--limit", eval_limit, "test step limit");
    eval->add_option("--out", eval_out, "CSV output path (default stdout)");
    add_agent_flags(eval, eval_agent, "apprentice");

    auto* plan_cmd = app.add_subcommand("plan", "Plan a single instance");
    std::string plan_instance;
    int plan_limit = 200;
    AgentFlags plan_agent;
    plan_cmd->add_option("--instance", plan_instance, "instance JSON path")->required();
    plan_cmd->add_option("--limit", plan_limit, "step limit");
    add_agent_flags(plan_cmd, plan_agent, "expert");

    auto* render = app.add_subcommand("render", "Render a plan as image frames");
    std::string render_instance;
    std::string render_out;
    std::string render_actions;
    int render_limit = 200;
    int render_scale = 8;
    bool render_ascii = false;
    AgentFlags render_agent;
    render->add_option("--instance", render_instance, "instance JSON path")->required();
    render->add_option("--out", render_out, "frame output directory");
    render->add_option("--actions", render_actions,
                       "file of flat action indices (skips the agent)");
    render->add_option("--limit", render_limit, "step limit");
    render->add_option("--scale", render_scale, "pixels per cell");
    render->add_flag("--ascii", render_ascii, "print text frames instead of files");
    add_agent_flags(render, render_agent, "expert");

    auto* stats = app.add_subcommand("stats", "Summarize a dataset");
    std::string stats_data;
    stats->add_option("--data", stats_data, "instance directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_out, gen_rooms, gen_grid, gen_objects, gen_rect, gen_l_prob,
                           gen_pillars, gen_walk, gen_seed);
        }
        if (train->parsed()) {
            train_cfg.mode = srp::mode_from_name(train_mode);
            const bool arch_flagged = arch_grid_opt->count() > 0 || arch_k_opt->count() > 0;
            return cmd_train(train_data, train_out, train_config, train_cfg, arch_flagged);
        }
        if (eval->parsed()) return cmd_eval(eval_data, eval_agent, eval_limit, eval_out);
        if (plan_cmd->parsed()) return cmd_plan(plan_instance, plan_agent, plan_limit);
        if (render->parsed()) {
            return cmd_render(render_instance, render_agent, render_limit, render_out,
                              render_actions, render_scale, render_ascii);
        }
        if (stats->parsed()) return cmd_stats(stats_data);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
