#pragma once

#include <cstdint>
#include <random>

namespace dogfight {

// Mixes a master seed with a stream id so subsystems (episode init, epsilon
// draws, replay sampling, ...) consume independent deterministic streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Thin deterministic wrapper around mt19937_64. The sampling algorithms are
// spelled out here instead of using std distributions so that a given seed
// produces the same draws on any standard library.
class Rng {
 public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), n > 0. Rejection-free multiply-shift; the
    // modulo bias is < 2^-53 for any n used here.
    int uniform_int(int n) { return static_cast<int>(uniform() * n); }

    bool bernoulli(double p) { return uniform() < p; }

 private:
    std::mt19937_64 gen_;
};

}  // namespace dogfight
