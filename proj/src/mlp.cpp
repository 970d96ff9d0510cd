#include "freqnet/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "freqnet/errors.hpp"
#include "freqnet/random.hpp"

namespace freqnet {

namespace {

constexpr double kProbabilityFloor = 1e-12;

void check_sizes(const std::vector<std::size_t>& sizes) {
    if (sizes.size() < 2) throw InvalidArgument("an MLP needs at least input and output sizes");
    for (std::size_t s : sizes) {
        if (s == 0) throw InvalidArgument("MLP layer sizes must be positive");
    }
    if (sizes.back() < 2) throw InvalidArgument("an MLP classifier needs at least 2 classes");
}

} // namespace

std::string to_string(Activation a) { return a == Activation::relu ? "relu" : "leaky_relu"; }

Activation parse_activation(std::string_view name) {
    if (name == "leaky_relu") return Activation::leaky_relu;
    if (name == "relu") return Activation::relu;
    throw InvalidArgument("unknown activation '" + std::string(name) + "' (expected leaky_relu or relu)");
}

MlpParams MlpParams::zeros(std::vector<std::size_t> sizes, Activation act, double alpha) {
    check_sizes(sizes);
    MlpParams p;
    p.layer_sizes = std::move(sizes);
    p.activation = act;
    p.alpha = alpha;
    for (std::size_t l = 0; l + 1 < p.layer_sizes.size(); ++l) {
        p.weights.emplace_back(p.layer_sizes[l + 1] * p.layer_sizes[l], 0.0);
        p.biases.emplace_back(p.layer_sizes[l + 1], 0.0);
    }
    return p;
}

MlpParams init_xavier(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed, Activation act,
                      double alpha) {
    MlpParams p = MlpParams::zeros(layer_sizes, act, alpha);
    Rng rng(seed);
    for (std::size_t l = 0; l < p.layer_count(); ++l) {
        const double fan = static_cast<double>(layer_sizes[l] + layer_sizes[l + 1]);
        const double bound = std::sqrt(6.0 / fan);
        for (double& w : p.weights[l]) w = rng.uniform(-bound, bound);
    }
    return p;
}

std::vector<double> softmax(std::span<const double> logits) {
    const double top = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - top);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

ForwardTrace forward(const MlpParams& params, std::span<const double> x) {
    if (x.size() != params.input_size()) {
        throw ShapeMismatch("MLP input length " + std::to_string(x.size()) + " does not match " +
                            std::to_string(params.input_size()));
    }
    const double slope = params.negative_slope();
    ForwardTrace trace;
    trace.inputs.emplace_back(x.begin(), x.end());
    for (std::size_t l = 0; l < params.layer_count(); ++l) {
        const std::size_t n_in = params.layer_sizes[l];
        const std::size_t n_out = params.layer_sizes[l + 1];
        const auto& in = trace.inputs.back();
        const auto& w = params.weights[l];
        std::vector<double> z(params.biases[l]);
        for (std::size_t o = 0; o < n_out; ++o) {
            const double* row = &w[o * n_in];
            double acc = 0.0;
            for (std::size_t i = 0; i < n_in; ++i) acc += row[i] * in[i];
            z[o] += acc;
        }
        const bool hidden = l + 1 < params.layer_count();
        if (hidden) {
            std::vector<double> a(n_out);
            for (std::size_t o = 0; o < n_out; ++o) a[o] = z[o] >= 0.0 ? z[o] : slope * z[o];
            trace.pre.push_back(std::move(z));
            trace.inputs.push_back(std::move(a));
        } else {
            trace.probabilities = softmax(z);
            trace.pre.push_back(std::move(z));
        }
    }
    return trace;
}

double cross_entropy(std::span<const double> probabilities, std::size_t class_id) {
    if (class_id >= probabilities.size()) {
        throw InvalidArgument("class id " + std::to_string(class_id) + " out of range for " +
                              std::to_string(probabilities.size()) + " classes");
    }
    return -std::log(std::max(probabilities[class_id], kProbabilityFloor));
}

MlpGradients backward(const MlpParams& params, const ForwardTrace& trace, std::size_t class_id) {
    const std::size_t layers = params.layer_count();
    if (trace.pre.size() != layers || trace.inputs.size() != layers ||
        trace.probabilities.size() != params.output_size()) {
        throw ShapeMismatch("forward trace does not match MLP shape");
    }
    if (class_id >= params.output_size()) {
        throw InvalidArgument("class id " + std::to_string(class_id) + " out of range");
    }
    const double slope = params.negative_slope();

    MlpGradients g;
    g.weights.resize(layers);
    g.biases.resize(layers);

    // Softmax + cross-entropy: dL/dz = p - onehot.
    std::vector<double> delta = trace.probabilities;
    delta[class_id] -= 1.0;

    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t n_in = params.layer_sizes[l];
        const std::size_t n_out = params.layer_sizes[l + 1];
        const auto& in = trace.inputs[l];
        const auto& w = params.weights[l];

        auto& gw = g.weights[l];
        gw.resize(n_out * n_in);
        for (std::size_t o = 0; o < n_out; ++o) {
            for (std::size_t i = 0; i < n_in; ++i) gw[o * n_in + i] = delta[o] * in[i];
        }
        g.biases[l] = delta;

        std::vector<double> upstream(n_in, 0.0);
        for (std::size_t o = 0; o < n_out; ++o) {
            const double* row = &w[o * n_in];
            for (std::size_t i = 0; i < n_in; ++i) upstream[i] += row[i] * delta[o];
        }
        if (l == 0) {
            g.input = std::move(upstream);
        } else {
            const auto& z = trace.pre[l - 1];
            for (std::size_t i = 0; i < n_in; ++i) upstream[i] *= z[i] >= 0.0 ? 1.0 : slope;
            delta = std::move(upstream);
        }
    }
    return g;
}

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

} // namespace freqnet
