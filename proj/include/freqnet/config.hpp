#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "freqnet/mlp.hpp"
#include "freqnet/pooling.hpp"

namespace freqnet {

struct PoolingConfig {
    std::size_t size = 4;
    DistanceMetric metric = DistanceMetric::chebyshev;
    friend bool operator==(const PoolingConfig&, const PoolingConfig&) = default;
};

/// Scaling applied to each block's magnitude before ring summation, for a
/// block of side N: none keeps the raw transform, unitary divides by N
/// (energy-preserving convention), block_area divides by N^2 (DC equals the
/// block mean).
enum class SpectrumNormalization { none, unitary, block_area };

std::string to_string(SpectrumNormalization n);
SpectrumNormalization parse_normalization(std::string_view name);

struct FeatureConfig {
    SpectrumNormalization normalization = SpectrumNormalization::block_area;
    friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

struct FilterInitConfig {
    double center = 0.1;
    double epsilon = 0.01;
    friend bool operator==(const FilterInitConfig&, const FilterInitConfig&) = default;
};

struct MlpConfig {
    std::vector<std::size_t> hidden{16};
    Activation activation = Activation::leaky_relu;
    double alpha = 0.01;
    friend bool operator==(const MlpConfig&, const MlpConfig&) = default;
};

struct TrainConfig {
    double learning_rate = 0.01;
    double lr_decay = 0.0;
    double momentum = 0.9;
    std::size_t batch_size = 4;
    std::size_t epochs = 100;
    std::uint64_t seed = 0;
    double split_fraction = 0.75;
    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Complete description of a run. Defaults reproduce the two-texture
/// setup: 128x128 input, a single slicing level, 16 square rings, one
/// hidden layer of 16 units.
struct RunConfig {
    std::size_t image_side = 128;
    std::size_t slicing_levels = 1;
    PoolingConfig pooling;
    FeatureConfig features;
    FilterInitConfig filter_init;
    MlpConfig mlp;
    TrainConfig train;

    /// Number of stacked ring coefficients the head receives.
    std::size_t feature_length() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

/// Strict parse: missing keys take defaults, unknown keys and wrongly
/// typed values throw ConfigError. The result is validated.
RunConfig config_from_json(const nlohmann::json& j);

/// Reads and parses a JSON config file (IoError if unreadable).
RunConfig load_config(const std::filesystem::path& path);

} // namespace freqnet
