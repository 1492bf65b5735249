#include <benchmark/benchmark.h>

#include "dogfight/ddqn.hpp"
#include "dogfight/env.hpp"
#include "dogfight/lowlevel.hpp"

using namespace dogfight;

namespace {
const Airframe& f16() {
    static const Airframe airframe =
        load_airframe(std::filesystem::path(DOGFIGHT_SOURCE_DATA_DIR) / "f16");
    return airframe;
}
}  // namespace

static void BM_AirframeStep(benchmark::State& state) {
    const TrimResult trim = trim_search(5000.0, 0.5, f16());
    BodyState s = trim.state;
    for (auto _ : state) {
        s = step(s, trim.controls, 0.01, f16());
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_AirframeStep);

static void BM_EnvDecisionStep(benchmark::State& state) {
    EpisodeConfig config;
    DogfightEnv env(f16(), config, 7);
    env.reset();
    int k = 0;
    for (auto _ : state) {
        if (env.done()) env.reset();
        benchmark::DoNotOptimize(env.step(static_cast<ManeuverId>(k++ % 8)));
    }
}
BENCHMARK(BM_EnvDecisionStep);

static void BM_QNetworkForward(benchmark::State& state) {
    QNetwork net = QNetwork::dogfight_default();
    Rng rng(3);
    net.init_params(rng);
    Observation obs{};
    for (int i = 0; i < kObservationSize; ++i) obs[i] = rng.uniform(-1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(net.forward(obs));
}
BENCHMARK(BM_QNetworkForward);

static void BM_TrainStep(benchmark::State& state) {
    QNetwork net = QNetwork::dogfight_default();
    Rng rng(5);
    net.init_params(rng);
    QNetwork target = net;
    TrainConfig config;
    ReplayBuffer buffer(config.buffer_capacity);
    for (int i = 0; i < config.batch_size * 2; ++i) {
        Transition t;
        for (auto& v : t.s) v = rng.uniform(-1.0, 1.0);
        t.s_next = t.s;
        t.action = rng.uniform_int(8);
        t.reward = rng.uniform(-1.0, 1.0);
        buffer.push(t);
    }
    AdamOptimizer opt(net.param_count(), config.learning_rate);
    Rng sample_rng(9);
    for (auto _ : state)
        benchmark::DoNotOptimize(train_step(buffer, net, target, opt, config, sample_rng));
}
BENCHMARK(BM_TrainStep);

BENCHMARK_MAIN();
