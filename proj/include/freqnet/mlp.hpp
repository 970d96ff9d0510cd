#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freqnet {

enum class Activation { leaky_relu, relu };

std::string to_string(Activation a);
Activation parse_activation(std::string_view name);

/// Fully connected classifier. Layer l maps layer_sizes[l] inputs to
/// layer_sizes[l+1] outputs; weights[l] is row-major (out x in). Hidden
/// layers use the configured activation, the last layer feeds a softmax.
struct MlpParams {
    std::vector<std::size_t> layer_sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    Activation activation = Activation::leaky_relu;
    double alpha = 0.01; // negative-side slope of leaky_relu

    std::size_t layer_count() const { return weights.size(); }
    std::size_t input_size() const { return layer_sizes.front(); }
    std::size_t output_size() const { return layer_sizes.back(); }
    double negative_slope() const { return activation == Activation::relu ? 0.0 : alpha; }

    /// Zero-filled parameters with the given shape.
    static MlpParams zeros(std::vector<std::size_t> sizes, Activation act = Activation::leaky_relu,
                           double alpha = 0.01);
};

/// pre[l] and post[l] are the pre-activation and activation of layer l;
/// inputs[0] is the network input, inputs[l+1] == post[l] for hidden layers.
struct ForwardTrace {
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> pre;
    std::vector<double> probabilities;
};

struct MlpGradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    std::vector<double> input;
};

/// Xavier-uniform weights in [-b, b], b = sqrt(6 / (fan_in + fan_out)); zero biases.
MlpParams init_xavier(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed,
                      Activation act = Activation::leaky_relu, double alpha = 0.01);

/// Softmax with max subtraction.
std::vector<double> softmax(std::span<const double> logits);

ForwardTrace forward(const MlpParams& params, std::span<const double> x);

/// -log(max(p[class_id], 1e-12)).
double cross_entropy(std::span<const double> probabilities, std::size_t class_id);

/// Exact gradients of cross_entropy(forward(x), class_id), including dL/dx.
MlpGradients backward(const MlpParams& params, const ForwardTrace& trace, std::size_t class_id);

/// Index of the largest probability; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> values);

} // namespace freqnet
