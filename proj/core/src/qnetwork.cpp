#include "dogfight/qnetwork.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dogfight/error.hpp"

namespace dogfight {

namespace {

// Eight-accumulator dot product: breaks the floating-point dependency chain
// so the loop pipelines/vectorizes without reassociation flags. Deterministic:
// the summation order is fixed by construction.
double dot4(const double* __restrict a, const double* __restrict b, int n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    double s4 = 0.0, s5 = 0.0, s6 = 0.0, s7 = 0.0;
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
        s4 += a[i + 4] * b[i + 4];
        s5 += a[i + 5] * b[i + 5];
        s6 += a[i + 6] * b[i + 6];
        s7 += a[i + 7] * b[i + 7];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return ((s0 + s1) + (s2 + s3)) + ((s4 + s5) + (s6 + s7));
}

// y += c * x, with the arrays known not to overlap.
void axpy(double c, const double* __restrict x, double* __restrict y, int n) {
    for (int i = 0; i < n; ++i) y[i] += c * x[i];
}

}  // namespace

QNetwork::QNetwork(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
    if (sizes_.size() < 2) throw ContractViolation("ddqn", "network needs at least two layers");
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        offsets_.push_back(total);
        total += static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1] + sizes_[l + 1];
    }
    params_.assign(total, 0.0);
}

QNetwork QNetwork::dogfight_default() { return QNetwork({12, 512, 256, 8}); }

std::size_t QNetwork::weight_offset(int layer) const { return offsets_.at(layer); }

std::size_t QNetwork::bias_offset(int layer) const {
    return offsets_.at(layer) + static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1];
}

void QNetwork::init_params(Rng& rng) {
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
        double* w = params_.data() + weight_offset(static_cast<int>(l));
        const std::size_t count = static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1] +
                                  sizes_[l + 1];
        for (std::size_t i = 0; i < count; ++i) w[i] = rng.uniform(-bound, bound);
    }
}

std::vector<double> QNetwork::forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_size())
        throw ContractViolation("ddqn", "input size mismatch");
    std::vector<double> cur(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const int n_in = sizes_[l], n_out = sizes_[l + 1];
        const double* w = params_.data() + weight_offset(static_cast<int>(l));
        const double* b = params_.data() + bias_offset(static_cast<int>(l));
        next.assign(n_out, 0.0);
        for (int o = 0; o < n_out; ++o) {
            const double* row = w + static_cast<std::size_t>(o) * n_in;
            const double acc = b[o] + dot4(row, cur.data(), n_in);
            next[o] = (l + 2 < sizes_.size()) ? std::max(acc, 0.0) : acc;
        }
        cur.swap(next);
    }
    return cur;
}

void QNetwork::forward_batch(const double* in, int batch, double* out) const {
    const std::size_t layers = sizes_.size() - 1;
    std::vector<double> buf_a(static_cast<std::size_t>(batch) *
                              *std::max_element(sizes_.begin(), sizes_.end()));
    std::vector<double> buf_b(buf_a.size());
    const double* cur = in;
    double* dst = buf_a.data();
    for (std::size_t l = 0; l < layers; ++l) {
        const int n_in = sizes_[l], n_out = sizes_[l + 1];
        const bool last = (l + 1 == layers);
        const double* w = params_.data() + weight_offset(static_cast<int>(l));
        const double* b = params_.data() + bias_offset(static_cast<int>(l));
        double* layer_out = last ? out : dst;
        for (int s = 0; s < batch; ++s) {
            const double* x = cur + static_cast<std::size_t>(s) * n_in;
            double* y = layer_out + static_cast<std::size_t>(s) * n_out;
            for (int o = 0; o < n_out; ++o) {
                const double* row = w + static_cast<std::size_t>(o) * n_in;
                const double acc = b[o] + dot4(row, x, n_in);
                y[o] = last ? acc : std::max(acc, 0.0);
            }
        }
        cur = layer_out;
        dst = (dst == buf_a.data()) ? buf_b.data() : buf_a.data();
    }
}

double QNetwork::loss_and_gradient(const double* states, const int* actions,
                                   const double* targets, int batch,
                                   std::vector<double>& grad) const {
    const std::size_t layers = sizes_.size() - 1;
    grad.assign(params_.size(), 0.0);

    // Forward pass keeping every activation.
    std::vector<std::vector<double>> acts(layers + 1);
    acts[0].assign(states, states + static_cast<std::size_t>(batch) * sizes_[0]);
    for (std::size_t l = 0; l < layers; ++l) {
        const int n_in = sizes_[l], n_out = sizes_[l + 1];
        const bool last = (l + 1 == layers);
        const double* w = params_.data() + weight_offset(static_cast<int>(l));
        const double* b = params_.data() + bias_offset(static_cast<int>(l));
        acts[l + 1].assign(static_cast<std::size_t>(batch) * n_out, 0.0);
        for (int s = 0; s < batch; ++s) {
            const double* x = acts[l].data() + static_cast<std::size_t>(s) * n_in;
            double* y = acts[l + 1].data() + static_cast<std::size_t>(s) * n_out;
            for (int o = 0; o < n_out; ++o) {
                const double* row = w + static_cast<std::size_t>(o) * n_in;
                const double acc = b[o] + dot4(row, x, n_in);
                y[o] = last ? acc : std::max(acc, 0.0);
            }
        }
    }

    // Output delta is nonzero only at the selected action of each sample.
    const int n_out = sizes_.back();
    double loss = 0.0;
    std::vector<double> delta(static_cast<std::size_t>(batch) * n_out, 0.0);
    for (int s = 0; s < batch; ++s) {
        const double q = acts[layers][static_cast<std::size_t>(s) * n_out + actions[s]];
        const double diff = q - targets[s];
        loss += diff * diff;
        delta[static_cast<std::size_t>(s) * n_out + actions[s]] = 2.0 * diff / batch;
    }
    loss /= batch;

    // Backward pass.
    std::vector<double> next_delta;
    for (int l = static_cast<int>(layers) - 1; l >= 0; --l) {
        const int n_in = sizes_[l], n_o = sizes_[l + 1];
        const double* w = params_.data() + weight_offset(l);
        double* gw = grad.data() + weight_offset(l);
        double* gb = grad.data() + bias_offset(l);
        if (l > 0) next_delta.assign(static_cast<std::size_t>(batch) * n_in, 0.0);

        for (int s = 0; s < batch; ++s) {
            const double* x = acts[l].data() + static_cast<std::size_t>(s) * n_in;
            const double* d = delta.data() + static_cast<std::size_t>(s) * n_o;
            double* nd = l > 0 ? next_delta.data() + static_cast<std::size_t>(s) * n_in : nullptr;
            for (int o = 0; o < n_o; ++o) {
                const double dv = d[o];
                if (dv == 0.0) continue;
                gb[o] += dv;
                axpy(dv, x, gw + static_cast<std::size_t>(o) * n_in, n_in);
                if (nd) axpy(dv, w + static_cast<std::size_t>(o) * n_in, nd, n_in);
            }
            if (nd) {
                // ReLU gate: units that were clamped pass no gradient.
                for (int i = 0; i < n_in; ++i)
                    if (x[i] <= 0.0) nd[i] = 0.0;
            }
        }
        delta.swap(next_delta);
    }
    return loss;
}

void QNetwork::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw DataError("ddqn", "cannot open checkpoint '" + file.string() + "'");
    out << "dogfight-qnet 1\n";
    out << "layers " << sizes_.size();
    for (int s : sizes_) out << ' ' << s;
    out << "\nparams " << params_.size() << '\n';
    char buf[32];
    for (double p : params_) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << buf << '\n';
    }
    if (!out) throw DataError("ddqn", "write failed for '" + file.string() + "'");
}

QNetwork QNetwork::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("ddqn", "cannot open checkpoint '" + file.string() + "'");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "dogfight-qnet" || version != 1)
        throw DataError("ddqn", "unrecognized checkpoint format in '" + file.string() + "'");
    std::string key;
    std::size_t n_layers = 0;
    in >> key >> n_layers;
    if (key != "layers" || n_layers < 2)
        throw DataError("ddqn", "bad layer header in '" + file.string() + "'");
    std::vector<int> sizes(n_layers);
    for (auto& s : sizes) in >> s;
    std::size_t n_params = 0;
    in >> key >> n_params;
    if (key != "params") throw DataError("ddqn", "bad param header in '" + file.string() + "'");
    QNetwork net(sizes);
    if (net.param_count() != n_params)
        throw DataError("ddqn", "param count mismatch in '" + file.string() + "'");
    for (auto& p : net.params_) in >> p;
    if (!in) throw DataError("ddqn", "truncated checkpoint '" + file.string() + "'");
    return net;
}

AdamOptimizer::AdamOptimizer(std::size_t param_count, double learning_rate, double beta1,
                             double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
      m_(param_count, 0.0), v_(param_count, 0.0) {}

void AdamOptimizer::update(std::span<double> params, std::span<const double> grad) {
    ++steps_;
    const double bc1 = 1.0 - std::pow(beta1_, steps_);
    const double bc2 = 1.0 - std::pow(beta2_, steps_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        params[i] -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
    }
}

}  // namespace dogfight
