#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "dogfight/env.hpp"
#include "dogfight/qnetwork.hpp"

namespace dogfight {

struct Transition {
    Observation s{};
    Observation s_next{};
    int action = 0;
    double reward = 0.0;
    bool done = false;
};

// FIFO ring buffer sampled uniformly with replacement.
class ReplayBuffer {
 public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(const Transition& t);
    std::size_t size() const { return size_; }
    std::size_t capacity() const { return storage_.size(); }
    const Transition& at(std::size_t i) const { return storage_[i]; }

    void sample_indices(int batch, Rng& rng, std::vector<std::size_t>& out) const;

 private:
    std::vector<Transition> storage_;
    std::size_t size_ = 0;
    std::size_t head_ = 0;
};

struct TrainConfig {
    double gamma = 0.95;
    double epsilon = 0.95;       // probability of acting greedily while training
    int target_sync = 512;       // hard target copy every this many updates
    double learning_rate = 1e-4;
    int batch_size = 512;
    long total_env_steps = 500000;
    std::size_t buffer_capacity = 100000;
    long checkpoint_every = 50000;  // env steps between checkpoints (0 = final only)
    std::vector<int> layer_sizes = {12, 512, 256, 8};
};

// Greedy action with lowest-index tie-break.
int greedy_action(const QNetwork& net, const Observation& obs);

// Greedy with probability epsilon, uniform over the action set otherwise
// (epsilon = 1 recovers the pure greedy test-time policy).
int act_epsilon_greedy(const QNetwork& net, const Observation& obs, double epsilon, Rng& rng);

// Double-Q targets: r + gamma * (1 - done) * Q_target(s', argmax_a Q_online(s', a)).
std::vector<double> td_targets(std::span<const Transition> batch, const QNetwork& online,
                               const QNetwork& target, double gamma);

// One uniform batch, one gradient step on the mean squared TD error.
double train_step(const ReplayBuffer& buffer, QNetwork& online, const QNetwork& target,
                  AdamOptimizer& optimizer, const TrainConfig& config, Rng& rng);

void sync_target(const QNetwork& online, QNetwork& target);

struct TrainLogRow {
    long env_step = 0;
    long episode = 0;
    double loss = 0.0;
    bool has_loss = false;
    double epsilon = 0.0;
    Outcome outcome = Outcome::Ongoing;  // set on episode-ending rows
    bool episode_end = false;
};

struct OutcomeCurvePoint {
    long episode = 0;
    long env_step = 0;
    long wins = 0;
    long losses = 0;
    long ties = 0;
};

struct TrainResult {
    QNetwork net;
    std::vector<TrainLogRow> log;
    std::vector<OutcomeCurvePoint> outcome_curve;  // cumulative, one point per episode
    long episodes = 0;
    long env_steps = 0;
    long train_steps = 0;
};

// Runs the training loop: every decision period the agent acts
// epsilon-greedily, the environment advances one period, the transition is
// stored, and one gradient update is taken once the buffer can fill a batch.
// When out_dir is nonempty, checkpoints, train_log.csv and outcome_curve.csv
// are written there.
TrainResult train(const Airframe& airframe, const EpisodeConfig& env_config,
                  const TrainConfig& config, std::uint64_t seed,
                  const std::filesystem::path& out_dir = {}, std::ostream* progress = nullptr);

struct EvalResult {
    int episodes = 0;
    long wins = 0;
    long losses = 0;
    long ties = 0;
    double win_pct = 0.0;
    double loss_pct = 0.0;
    double tie_pct = 0.0;
};

// Greedy rollouts against the opponent configured in env_config; percentages
// sum to exactly 100.
EvalResult evaluate(const Airframe& airframe, const QNetwork& net,
                    const EpisodeConfig& env_config, int episodes, std::uint64_t seed);

void write_train_log_csv(const std::filesystem::path& file, const std::vector<TrainLogRow>& log);
void write_outcome_curve_csv(const std::filesystem::path& file,
                             const std::vector<OutcomeCurvePoint>& curve);

}  // namespace dogfight
