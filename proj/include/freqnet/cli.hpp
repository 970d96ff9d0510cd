#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "freqnet/dataset.hpp"
#include "freqnet/model.hpp"
#include "freqnet/trainer.hpp"

namespace freqnet::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kIoError = 2,
    kCheckpointError = 3,
};

struct TrainArgs {
    std::optional<std::filesystem::path> config;
    std::filesystem::path data;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct EvalArgs {
    std::filesystem::path model;
    std::filesystem::path data;
    std::optional<std::filesystem::path> out; // confusion CSV
};

struct SynthArgs {
    std::filesystem::path out;
    std::string classes = "low:3,high:9";
    std::size_t count = 40;
    std::uint64_t seed = 0;
    std::size_t side = 128;
};

struct DirectoryRun {
    LabeledIndex index;
    std::vector<Sample> train_set;
    std::vector<Sample> val_set;
    TrainResult result;
};

/// What `train` does short of writing files: scan, split on train.seed,
/// load, extract, initialise from train.seed and train. The data summary
/// line goes to `log` when given.
DirectoryRun train_on_directory(const RunConfig& cfg, const std::filesystem::path& data, const TrainHooks& hooks = {},
                                std::ostream* log = nullptr);

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_predict(const std::filesystem::path& model, const std::filesystem::path& image, std::ostream& out,
                std::ostream& err);
int cmd_export_filters(const std::filesystem::path& model, const std::filesystem::path& out_csv, std::ostream& out,
                       std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

/// Writes `block_index,level,ring_index,weight` rows for every filter weight.
void write_filters_csv(const FreqNetModel& model, std::ostream& out);

/// Full command line without the program name, e.g. {"train", "--data", "d"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace freqnet::cli
