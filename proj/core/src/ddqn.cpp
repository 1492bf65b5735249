#include "dogfight/ddqn.hpp"

#include <fstream>

#include "dogfight/error.hpp"

namespace dogfight {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : storage_(capacity) {
    if (capacity == 0) throw ContractViolation("ddqn", "replay buffer capacity must be > 0");
}

void ReplayBuffer::push(const Transition& t) {
    storage_[head_] = t;
    head_ = (head_ + 1) % storage_.size();
    if (size_ < storage_.size()) ++size_;
}

void ReplayBuffer::sample_indices(int batch, Rng& rng, std::vector<std::size_t>& out) const {
    if (size_ == 0) throw ContractViolation("ddqn", "sampling an empty replay buffer");
    out.resize(batch);
    for (int i = 0; i < batch; ++i)
        out[i] = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(size_)));
}

int greedy_action(const QNetwork& net, const Observation& obs) {
    const std::vector<double> q = net.forward(obs);
    int best = 0;
    for (int a = 1; a < static_cast<int>(q.size()); ++a)
        if (q[a] > q[best]) best = a;
    return best;
}

int act_epsilon_greedy(const QNetwork& net, const Observation& obs, double epsilon, Rng& rng) {
    if (rng.uniform() < epsilon) return greedy_action(net, obs);
    return rng.uniform_int(net.output_size());
}

std::vector<double> td_targets(std::span<const Transition> batch, const QNetwork& online,
                               const QNetwork& target, double gamma) {
    const int n = static_cast<int>(batch.size());
    if (n == 0) throw ContractViolation("ddqn", "td_targets needs a nonempty batch");
    const int n_act = online.output_size();
    const int n_obs = online.input_size();

    std::vector<double> next_states(static_cast<std::size_t>(n) * n_obs);
    for (int i = 0; i < n; ++i)
        std::copy(batch[i].s_next.begin(), batch[i].s_next.end(),
                  next_states.begin() + static_cast<std::size_t>(i) * n_obs);

    std::vector<double> q_online(static_cast<std::size_t>(n) * n_act);
    std::vector<double> q_target(q_online.size());
    online.forward_batch(next_states.data(), n, q_online.data());
    target.forward_batch(next_states.data(), n, q_target.data());

    std::vector<double> targets(n);
    for (int i = 0; i < n; ++i) {
        if (batch[i].done) {
            targets[i] = batch[i].reward;
            continue;
        }
        const double* qo = q_online.data() + static_cast<std::size_t>(i) * n_act;
        int best = 0;
        for (int a = 1; a < n_act; ++a)
            if (qo[a] > qo[best]) best = a;
        targets[i] =
            batch[i].reward + gamma * q_target[static_cast<std::size_t>(i) * n_act + best];
    }
    return targets;
}

double train_step(const ReplayBuffer& buffer, QNetwork& online, const QNetwork& target,
                  AdamOptimizer& optimizer, const TrainConfig& config, Rng& rng) {
    if (buffer.size() < static_cast<std::size_t>(config.batch_size))
        throw ContractViolation("ddqn", "buffer smaller than one batch");

    std::vector<std::size_t> idx;
    buffer.sample_indices(config.batch_size, rng, idx);
    std::vector<Transition> batch;
    batch.reserve(idx.size());
    for (std::size_t i : idx) batch.push_back(buffer.at(i));

    const std::vector<double> targets = td_targets(batch, online, target, config.gamma);

    const int n_obs = online.input_size();
    std::vector<double> states(batch.size() * n_obs);
    std::vector<int> actions(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        std::copy(batch[i].s.begin(), batch[i].s.end(), states.begin() + i * n_obs);
        actions[i] = batch[i].action;
    }

    std::vector<double> grad;
    const double loss = online.loss_and_gradient(states.data(), actions.data(), targets.data(),
                                                 static_cast<int>(batch.size()), grad);
    if (!std::isfinite(loss))
        throw ContractViolation("ddqn", "non-finite training loss");
    optimizer.update(online.params(), grad);
    return loss;
}

void sync_target(const QNetwork& online, QNetwork& target) {
    std::copy(online.params().begin(), online.params().end(), target.params().begin());
}

TrainResult train(const Airframe& airframe, const EpisodeConfig& env_config,
                  const TrainConfig& config, std::uint64_t seed,
                  const std::filesystem::path& out_dir, std::ostream* progress) {
    Rng init_rng(derive_seed(seed, 1));
    Rng policy_rng(derive_seed(seed, 2));
    Rng replay_rng(derive_seed(seed, 3));
    DogfightEnv env(airframe, env_config, derive_seed(seed, 4));

    TrainResult result;
    result.net = QNetwork(config.layer_sizes);
    result.net.init_params(init_rng);
    QNetwork target = result.net;
    AdamOptimizer optimizer(result.net.param_count(), config.learning_rate);
    ReplayBuffer buffer(config.buffer_capacity);

    const bool writing = !out_dir.empty();
    if (writing) std::filesystem::create_directories(out_dir);
    const auto checkpoint = [&](const std::string& tag) {
        if (!writing) return;
        result.net.save(out_dir / ("checkpoint_" + tag + ".qnet"));
    };

    long wins = 0, losses = 0, ties = 0;
    Observation obs = env.reset();
    result.episodes = 1;

    while (result.env_steps < config.total_env_steps) {
        const int action = act_epsilon_greedy(result.net, obs, config.epsilon, policy_rng);
        const StepResult sr = env.step(static_cast<ManeuverId>(action));
        buffer.push({obs, sr.obs, action, sr.reward, sr.done});
        obs = sr.obs;
        ++result.env_steps;

        TrainLogRow row;
        row.env_step = result.env_steps;
        row.episode = result.episodes;
        row.epsilon = config.epsilon;
        if (buffer.size() >= static_cast<std::size_t>(config.batch_size)) {
            row.loss = train_step(buffer, result.net, target, optimizer, config, replay_rng);
            row.has_loss = true;
            ++result.train_steps;
            if (result.train_steps % config.target_sync == 0) sync_target(result.net, target);
        }

        if (sr.done) {
            switch (sr.outcome) {
                case Outcome::BlueWin: ++wins; break;
                case Outcome::RedWin: ++losses; break;
                default: ++ties; break;
            }
            row.outcome = sr.outcome;
            row.episode_end = true;
            result.outcome_curve.push_back(
                {result.episodes, result.env_steps, wins, losses, ties});
            if (progress && result.episodes % 50 == 0)
                *progress << "episode " << result.episodes << " step " << result.env_steps
                          << " w/l/t " << wins << '/' << losses << '/' << ties << '\n';
            if (result.env_steps < config.total_env_steps) {
                obs = env.reset();
                ++result.episodes;
            }
        }
        result.log.push_back(row);

        if (writing && config.checkpoint_every > 0 &&
            result.env_steps % config.checkpoint_every == 0)
            checkpoint("step" + std::to_string(result.env_steps));
    }

    checkpoint("final");
    if (writing) {
        write_train_log_csv(out_dir / "train_log.csv", result.log);
        write_outcome_curve_csv(out_dir / "outcome_curve.csv", result.outcome_curve);
    }
    return result;
}

EvalResult evaluate(const Airframe& airframe, const QNetwork& net,
                    const EpisodeConfig& env_config, int episodes, std::uint64_t seed) {
    if (episodes < 1) throw ContractViolation("ddqn", "evaluate needs at least one episode");
    EvalResult r;
    r.episodes = episodes;
    for (int e = 0; e < episodes; ++e) {
        DogfightEnv env(airframe, env_config, derive_seed(seed, 100 + e));
        Observation obs = env.reset();
        while (!env.done()) {
            const int action = greedy_action(net, obs);
            obs = env.step(static_cast<ManeuverId>(action)).obs;
        }
        switch (env.outcome()) {
            case Outcome::BlueWin: ++r.wins; break;
            case Outcome::RedWin: ++r.losses; break;
            default: ++r.ties; break;
        }
    }
    r.win_pct = 100.0 * r.wins / episodes;
    r.loss_pct = 100.0 * r.losses / episodes;
    r.tie_pct = 100.0 - r.win_pct - r.loss_pct;  // sums to exactly 100
    return r;
}

void write_train_log_csv(const std::filesystem::path& file, const std::vector<TrainLogRow>& log) {
    std::ofstream out(file);
    if (!out) throw DataError("ddqn", "cannot open '" + file.string() + "'");
    out << "step,episode,loss,epsilon,outcome\n";
    for (const auto& row : log) {
        out << row.env_step << ',' << row.episode << ',';
        if (row.has_loss) out << row.loss;
        out << ',' << row.epsilon << ',';
        if (row.episode_end) out << outcome_name(row.outcome);
        out << '\n';
    }
}

void write_outcome_curve_csv(const std::filesystem::path& file,
                             const std::vector<OutcomeCurvePoint>& curve) {
    std::ofstream out(file);
    if (!out) throw DataError("ddqn", "cannot open '" + file.string() + "'");
    out << "episode,step,wins,losses,ties\n";
    for (const auto& p : curve)
        out << p.episode << ',' << p.env_step << ',' << p.wins << ',' << p.losses << ','
            << p.ties << '\n';
}

}  // namespace dogfight
