#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "freqnet/config.hpp"
#include "freqnet/freq_filter.hpp"
#include "freqnet/mlp.hpp"

namespace freqnet {

/// Filter bank + classifier head + the configuration that shaped them.
struct FreqNetModel {
    RunConfig config;
    std::vector<std::string> class_names;
    FrequencyFilterBank filters;
    MlpParams mlp;

    std::size_t class_count() const { return class_names.size(); }
};

/// Seeded initialisation: filter weights around filter_init.center and a
/// Xavier head of shape [feature_length, hidden..., n_classes].
FreqNetModel init_model(const RunConfig& cfg, std::vector<std::string> class_names, std::uint64_t seed);

/// Coefficients C = W * S for one sample followed by the head's softmax.
std::vector<double> predict_probabilities(const FreqNetModel& model, const RingSumVector& sums);

inline constexpr int kCheckpointFormatVersion = 1;

nlohmann::json checkpoint_to_json(const FreqNetModel& model);

/// Throws CheckpointError on any structural problem.
FreqNetModel checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const FreqNetModel& model, const std::filesystem::path& path);

/// IoError when the file is missing, CheckpointError when it is malformed.
FreqNetModel load_checkpoint(const std::filesystem::path& path);

} // namespace freqnet
