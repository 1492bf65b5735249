// Command-line front end: training runs, evaluation matrices against the
// eight scripted opponent strategies, scripted duels and trajectory export.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dogfight/ddqn.hpp"
#include "dogfight/error.hpp"
#include "dogfight/run_config.hpp"
#include "dogfight/trajectory.hpp"

namespace {

using namespace dogfight;

struct CommonOpts {
    std::string config_file;
    std::string out_dir;
    long seed = -1;  // -1 = take from config
};

RunConfig resolve_config(const CommonOpts& opts) {
    RunConfig config = opts.config_file.empty() ? RunConfig() : RunConfig::load(opts.config_file);
    if (opts.seed >= 0) config.set("seed", std::to_string(opts.seed));
    return config;
}

Airframe load_configured_airframe(const RunConfig& config) {
    Airframe airframe = load_airframe(config.data_dir());
    config.apply_aircraft_overrides(airframe.config);
    return airframe;
}

void write_resolved(const RunConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    config.save(out_dir / "config.cfg");
}

int cmd_train(const CommonOpts& opts, long steps, int strategy) {
    RunConfig config = resolve_config(opts);
    if (steps > 0) config.set("train.total_steps", std::to_string(steps));
    if (strategy > 0) config.set("opponent.strategy", std::to_string(strategy));
    const std::filesystem::path out = opts.out_dir.empty() ? "runs/train" : opts.out_dir;
    write_resolved(config, out);

    const Airframe airframe = load_configured_airframe(config);
    const EpisodeConfig env_config = config.episode_config(airframe.config.limits);
    const TrainConfig train_config = config.train_config();

    std::cout << "training for " << train_config.total_env_steps << " decision steps vs strategy "
              << config.get("opponent.strategy") << ", seed " << config.seed() << "\n";
    const TrainResult result =
        train(airframe, env_config, train_config, config.seed(), out, &std::cout);
    std::cout << "done: " << result.episodes << " episodes, " << result.train_steps
              << " updates; outputs in " << out.string() << "\n";
    return 0;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& checkpoint,
                 const std::string& strategies, int episodes) {
    RunConfig config = resolve_config(opts);
    const std::filesystem::path out = opts.out_dir.empty() ? "runs/evaluate" : opts.out_dir;
    write_resolved(config, out);

    const Airframe airframe = load_configured_airframe(config);
    const QNetwork net = QNetwork::load(checkpoint);

    std::vector<int> strategy_list;
    if (strategies == "all") {
        for (int i = 1; i <= 8; ++i) strategy_list.push_back(i);
    } else {
        std::stringstream ss(strategies);
        std::string item;
        while (std::getline(ss, item, ',')) strategy_list.push_back(std::stoi(item));
    }

    nlohmann::json report;
    report["episodes_per_strategy"] = episodes;
    report["checkpoint"] = checkpoint;
    report["rows"] = nlohmann::json::array();

    std::cout << "strategy   SP ES YY      win%    loss%     tie%\n";
    for (int s : strategy_list) {
        EpisodeConfig env_config = config.episode_config(airframe.config.limits);
        env_config.red_options = DtOptions::strategy(s);
        const EvalResult r = evaluate(airframe, net, env_config, episodes, config.seed());
        const DtOptions o = env_config.red_options;
        std::printf("%8d   %2c %2c %2c  %8.2f %8.2f %8.2f\n", s, o.self_protection ? 'x' : '.',
                    o.escape ? 'x' : '.', o.yo_yo ? 'x' : '.', r.win_pct, r.loss_pct, r.tie_pct);
        report["rows"].push_back({{"strategy", s},
                                  {"sp", o.self_protection},
                                  {"es", o.escape},
                                  {"yy", o.yo_yo},
                                  {"win_pct", r.win_pct},
                                  {"loss_pct", r.loss_pct},
                                  {"tie_pct", r.tie_pct},
                                  {"wins", r.wins},
                                  {"losses", r.losses},
                                  {"ties", r.ties}});
    }
    std::ofstream jout(out / "evaluation.json");
    jout << report.dump(2) << '\n';
    std::cout << "report written to " << (out / "evaluation.json").string() << "\n";
    return 0;
}

// An agent is either "dt:N" or a checkpoint path.
struct DuelAgent {
    bool is_dt = false;
    int strategy = 8;
    QNetwork net;
};

DuelAgent parse_agent(const std::string& spec) {
    DuelAgent agent;
    if (spec.rfind("dt:", 0) == 0) {
        agent.is_dt = true;
        agent.strategy = std::stoi(spec.substr(3));
        DtOptions::strategy(agent.strategy);  // validate
    } else {
        agent.net = QNetwork::load(spec);
    }
    return agent;
}

int cmd_duel(const CommonOpts& opts, const std::string& blue_spec, const std::string& red_spec,
             const std::string& scenario) {
    RunConfig config = resolve_config(opts);
    const std::filesystem::path out = opts.out_dir.empty() ? "runs/duel" : opts.out_dir;
    write_resolved(config, out);

    const Airframe airframe = load_configured_airframe(config);
    const DuelAgent blue = parse_agent(blue_spec);
    const DuelAgent red = parse_agent(red_spec);

    EpisodeConfig env_config = config.episode_config(airframe.config.limits);
    if (red.is_dt) env_config.red_options = DtOptions::strategy(red.strategy);

    DogfightEnv env(airframe, env_config, config.seed());
    TrajectoryWriter trajectory(out / "trajectory.csv");
    env.attach_trajectory(&trajectory);

    Observation obs;
    if (scenario == "random") {
        obs = env.reset();
    } else if (scenario == "case1" || scenario == "case2") {
        ScriptedInit init;
        init.red_pos = {0.0, -2000.0, -5000.0};
        init.blue_pos = {0.0, 2000.0, -5000.0};
        init.red_yaw_deg = 0.0;
        init.blue_yaw_deg = 180.0;
        const double mach = scenario == "case1" ? 0.9 : 0.8;
        init.blue_mach = mach;
        init.red_mach = mach;
        obs = env.reset(init);
    } else {
        throw ContractViolation("cli", "unknown scenario '" + scenario + "' (random|case1|case2)");
    }

    const DtParams dt_params = env_config.dt_params;
    while (!env.done()) {
        ManeuverId action;
        if (blue.is_dt) {
            const RelativeGeometry geom = relative_geometry(env.blue_state(), env.red_state());
            action = decide(env.blue_state(), air_data(env.blue_state().vel_body,
                                                       env.blue_state().altitude()),
                            env.red_state(),
                            air_data(env.red_state().vel_body, env.red_state().altitude()), geom,
                            DtOptions::strategy(blue.strategy), dt_params);
        } else {
            action = static_cast<ManeuverId>(greedy_action(blue.net, obs));
        }
        obs = env.step(action).obs;
    }

    EpisodeSummary summary;
    summary.outcome = env.outcome();
    summary.decision_steps = env.decision_steps();
    summary.blue_blood = env.blue_status().blood;
    summary.red_blood = env.red_status().blood;
    summary.seed = config.seed();
    write_episode_summary(out / "summary.json", summary);

    std::cout << "duel finished after " << env.decision_steps() << " s: "
              << outcome_name(env.outcome()) << " (blue blood "
              << env.blue_status().blood << ", red blood " << env.red_status().blood << ")\n"
              << "trajectory: " << (out / "trajectory.csv").string() << "\n";
    return 0;
}

// Rebuilds the cumulative win/loss/tie curve from a training log.
int cmd_export(const std::string& log_file, const std::string& out_file) {
    std::ifstream in(log_file);
    if (!in) throw DataError("cli", "cannot open '" + log_file + "'");
    std::ofstream out(out_file);
    if (!out) throw DataError("cli", "cannot open '" + out_file + "'");

    std::string line;
    std::getline(in, line);  // header
    out << "episode,step,wins,losses,ties\n";
    long wins = 0, losses = 0, ties = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string step, episode, loss, epsilon, outcome;
        std::getline(ss, step, ',');
        std::getline(ss, episode, ',');
        std::getline(ss, loss, ',');
        std::getline(ss, epsilon, ',');
        std::getline(ss, outcome, ',');
        if (outcome.empty()) continue;
        if (outcome == "win") ++wins;
        else if (outcome == "loss") ++losses;
        else ++ties;
        out << episode << ',' << step << ',' << wins << ',' << losses << ',' << ties << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1v1 within-visual-range air combat simulation and learning stack"};
    app.require_subcommand(1);

    CommonOpts opts;
    long steps = 0;
    int strategy = 0;
    int episodes = 400;
    std::string checkpoint, strategies = "all", blue_spec, red_spec = "dt:8";
    std::string scenario = "random", log_file, out_file;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_file, "configuration file");
        cmd->add_option("--seed", opts.seed, "random seed (overrides config)");
        cmd->add_option("--out", opts.out_dir, "output directory");
    };

    CLI::App* train_cmd = app.add_subcommand("train", "train the maneuver-selection agent");
    add_common(train_cmd);
    train_cmd->add_option("--steps", steps, "total decision steps");
    train_cmd->add_option("--strategy", strategy, "opponent strategy 1..8");

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "evaluate a checkpoint vs DT strategies");
    add_common(eval_cmd);
    eval_cmd->add_option("--checkpoint", checkpoint, "trained network checkpoint")->required();
    eval_cmd->add_option("--strategy", strategies, "comma list of strategies or 'all'");
    eval_cmd->add_option("--episodes", episodes, "episodes per strategy");

    CLI::App* duel_cmd = app.add_subcommand("duel", "run one logged episode");
    add_common(duel_cmd);
    duel_cmd->add_option("--blue", blue_spec, "blue agent: checkpoint path or dt:N")->required();
    duel_cmd->add_option("--red", red_spec, "red agent: dt:N");
    duel_cmd->add_option("--scenario", scenario, "random | case1 | case2");

    CLI::App* export_cmd = app.add_subcommand("export", "cumulative outcome curve from a log");
    export_cmd->add_option("--log", log_file, "train_log.csv from a training run")->required();
    export_cmd->add_option("--out", out_file, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(train_cmd)) return cmd_train(opts, steps, strategy);
        if (app.got_subcommand(eval_cmd)) return cmd_evaluate(opts, checkpoint, strategies, episodes);
        if (app.got_subcommand(duel_cmd)) return cmd_duel(opts, blue_spec, red_spec, scenario);
        if (app.got_subcommand(export_cmd)) return cmd_export(log_file, out_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
