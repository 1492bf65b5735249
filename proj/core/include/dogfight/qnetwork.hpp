#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "dogfight/rng.hpp"

namespace dogfight {

// Fully connected value network with rectified-linear hidden layers and a
// linear output. Parameters live in one flat vector laid out layer by layer:
// weights (row-major, out x in) followed by biases. The checkpoint format
// mirrors this order.
class QNetwork {
 public:
    QNetwork() = default;
    explicit QNetwork(std::vector<int> layer_sizes);

    // The network used for maneuver selection: 12 -> 512 -> 256 -> 8.
    static QNetwork dogfight_default();

    // Scaled uniform fan-in initialization, U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
    void init_params(Rng& rng);

    const std::vector<int>& layer_sizes() const { return sizes_; }
    int input_size() const { return sizes_.front(); }
    int output_size() const { return sizes_.back(); }
    std::size_t param_count() const { return params_.size(); }
    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }
    std::size_t weight_offset(int layer) const;  // layer in [0, L-1)
    std::size_t bias_offset(int layer) const;

    std::vector<double> forward(std::span<const double> input) const;

    // `out` must hold batch * output_size() values.
    void forward_batch(const double* in, int batch, double* out) const;

    // Mean squared error between Q(s_i, a_i) and target_i; accumulates the
    // gradient (overwriting `grad`) and returns the loss. Gradients flow only
    // through the selected action values.
    double loss_and_gradient(const double* states, const int* actions, const double* targets,
                             int batch, std::vector<double>& grad) const;

    void save(const std::filesystem::path& file) const;
    static QNetwork load(const std::filesystem::path& file);

 private:
    std::vector<int> sizes_;
    std::vector<double> params_;
    std::vector<std::size_t> offsets_;  // per layer: weight offset (bias follows)
};

// Adaptive moment estimation with the standard decay constants.
class AdamOptimizer {
 public:
    AdamOptimizer(std::size_t param_count, double learning_rate, double beta1 = 0.9,
                  double beta2 = 0.999, double epsilon = 1e-8);

    void update(std::span<double> params, std::span<const double> grad);
    long steps() const { return steps_; }

 private:
    double lr_, beta1_, beta2_, eps_;
    long steps_ = 0;
    std::vector<double> m_, v_;
};

}  // namespace dogfight
