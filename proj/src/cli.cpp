#include "freqnet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>

#include "CLI11.hpp"

#include "freqnet/dataset.hpp"
#include "freqnet/errors.hpp"
#include "freqnet/features.hpp"
#include "freqnet/slicing.hpp"
#include "freqnet/synth.hpp"
#include "freqnet/trainer.hpp"

namespace freqnet::cli {

namespace fs = std::filesystem;

namespace {

// Maps the library's error classes onto process exit codes, printing one
// diagnostic line.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const CheckpointError& e) {
        err << "checkpoint error: " << e.what() << '\n';
        return kCheckpointError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kConfigError;
    } catch (const ShapeMismatch& e) {
        err << "shape error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const DecodeError& e) {
        err << "decode error: " << e.what() << '\n';
        return kIoError;
    } catch (const EmptyDataset& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    }
}

std::vector<Sample> to_samples(std::vector<LabeledImage> images, const FeatureExtractor& fx) {
    std::vector<Image> pixels;
    pixels.reserve(images.size());
    for (auto& li : images) pixels.push_back(std::move(li.image));
    std::vector<RingSumVector> feats = fx.extract_all(pixels);
    std::vector<Sample> samples(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) samples[i] = {std::move(feats[i]), images[i].class_id};
    return samples;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

DirectoryRun train_on_directory(const RunConfig& cfg, const fs::path& data, const TrainHooks& hooks,
                                std::ostream* log) {
    validate(cfg);
    DirectoryRun run;
    run.index = scan_dataset(data);
    if (run.index.class_count() < 2) throw InvalidArgument("training needs at least 2 classes");
    const auto [train_index, val_index] = split(run.index, {cfg.train.split_fraction, cfg.train.seed});

    const FeatureExtractor fx(cfg);
    run.train_set = to_samples(load_images(train_index, cfg.image_side), fx);
    run.val_set = to_samples(load_images(val_index, cfg.image_side), fx);
    if (log) {
        *log << "data: " << run.index.entries.size() << " images, " << run.index.class_count() << " classes, "
             << run.train_set.size() << " train / " << run.val_set.size() << " val; " << fx.feature_length()
             << " ring coefficients\n";
    }
    const FreqNetModel init = init_model(cfg, run.index.class_names, cfg.train.seed);
    run.result = train(init, run.train_set, run.val_set, cfg.train, hooks);
    return run;
}

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig cfg = args.config ? load_config(*args.config) : RunConfig{};
        if (args.seed) cfg.train.seed = *args.seed;
        validate(cfg);

        TrainHooks hooks;
        if (!args.quiet) {
            hooks.after_epoch = [&out](const EpochRecord& r) {
                out << "epoch " << r.epoch << " lr " << r.lr << " loss " << r.train_loss << " train_acc "
                    << r.train_accuracy << " val_acc " << r.val_accuracy << " clamped " << r.clamped << '\n';
            };
        }
        ensure_directory(args.out);
        const DirectoryRun run = train_on_directory(cfg, args.data, hooks, &out);
        const TrainResult& result = run.result;
        const LabeledIndex& index = run.index;
        const auto& val_set = run.val_set;

        save_checkpoint(result.final_model, args.out / "model.json");
        save_checkpoint(result.best_model, args.out / "model_best.json");
        {
            auto f = open_output(args.out / "report.csv");
            write_report_csv(result.report, f);
        }
        {
            auto f = open_output(args.out / "confusion.csv");
            write_confusion_csv(result.report.confusion, index.class_names, f);
        }

        const double final_val =
            result.report.epochs.empty() ? evaluate(result.final_model, val_set).accuracy
                                         : result.report.epochs.back().val_accuracy;
        const double best_val =
            result.report.epochs.empty() ? final_val : result.report.best_val_accuracy;
        out << std::fixed << std::setprecision(4);
        out << "final val_accuracy " << final_val << '\n';
        out << "best val_accuracy " << best_val << " (epoch " << result.report.best_epoch << ")\n";
        out.unsetf(std::ios::floatfield);
        return kOk;
    });
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const FreqNetModel model = load_checkpoint(args.model);
        LabeledIndex index = scan_dataset(args.data);
        // Relabel the data's classes onto the model's class order.
        for (auto& e : index.entries) {
            const auto& name = index.class_names[e.class_id];
            auto it = std::find(model.class_names.begin(), model.class_names.end(), name);
            if (it == model.class_names.end()) {
                throw InvalidArgument("data class '" + name + "' is unknown to the model");
            }
            e.class_id = static_cast<std::size_t>(it - model.class_names.begin());
        }
        index.class_names = model.class_names;

        const FeatureExtractor fx(model.config);
        const auto samples = to_samples(load_images(index, model.config.image_side), fx);
        const EvalResult r = evaluate(model, samples);
        out << std::fixed << std::setprecision(4) << "accuracy " << r.accuracy << '\n';
        out.unsetf(std::ios::floatfield);
        write_confusion_csv(r.confusion, model.class_names, out);
        if (args.out) {
            auto f = open_output(*args.out);
            write_confusion_csv(r.confusion, model.class_names, f);
        }
        return kOk;
    });
}

int cmd_predict(const fs::path& model_path, const fs::path& image, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const FreqNetModel model = load_checkpoint(model_path);
        const Image img = resize(load_image(image), model.config.image_side);
        const auto probs = predict_probabilities(model, extract_features(img, model.config));
        std::vector<std::size_t> order(probs.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
        out << std::setprecision(6);
        for (std::size_t c : order) out << model.class_names[c] << ' ' << probs[c] << '\n';
        return kOk;
    });
}

void write_filters_csv(const FreqNetModel& model, std::ostream& out) {
    out << "block_index,level,ring_index,weight\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    std::size_t block = 0;
    std::size_t per_level = 1;
    for (std::size_t level = 1; level <= model.config.slicing_levels; ++level, per_level *= 4) {
        for (std::size_t k = 0; k < per_level; ++k, ++block) {
            const auto weights = model.filters.block(block);
            for (std::size_t r = 0; r < weights.size(); ++r) {
                out << block << ',' << level << ',' << r + 1 << ',' << weights[r] << '\n';
            }
        }
    }
    out.precision(old_precision);
}

int cmd_export_filters(const fs::path& model_path, const fs::path& out_csv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const FreqNetModel model = load_checkpoint(model_path);
        auto f = open_output(out_csv);
        write_filters_csv(model, f);
        out << "wrote " << model.filters.values.size() << " filter weights to " << out_csv.string() << '\n';
        return kOk;
    });
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto classes = parse_grating_classes(args.classes);
        write_synthetic_dataset(args.out, classes, args.count, args.seed, args.side);
        out << "wrote " << classes.size() * args.count << " images to " << args.out.string() << '\n';
        return kOk;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frequency-domain image classifier with trainable radial filters", "freqnet"};
    app.require_subcommand(1);

    TrainArgs train_args;
    std::string train_config;
    std::uint64_t train_seed = 0;
    auto* train = app.add_subcommand("train", "Train a model on <data>/<class>/<images>");
    train->add_option("--config", train_config, "JSON run configuration");
    train->add_option("--data", train_args.data, "Dataset root")->required();
    train->add_option("--out", train_args.out, "Output directory")->required();
    auto* seed_opt = train->add_option("--seed", train_seed, "Override train.seed");
    train->add_flag("--quiet", train_args.quiet, "Suppress per-epoch lines");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset");
    eval->add_option("--model", eval_args.model, "Checkpoint JSON")->required();
    eval->add_option("--data", eval_args.data, "Dataset root")->required();
    std::string eval_out;
    eval->add_option("--out", eval_out, "Write the confusion matrix CSV here");

    fs::path predict_model, predict_image;
    auto* predict = app.add_subcommand("predict", "Class probabilities for one image");
    predict->add_option("--model", predict_model, "Checkpoint JSON")->required();
    predict->add_option("--image,image", predict_image, "Image file")->required();

    fs::path export_model, export_out;
    auto* exportf = app.add_subcommand("export-filters", "Dump trained filter weights as CSV");
    exportf->add_option("--model", export_model, "Checkpoint JSON")->required();
    exportf->add_option("--out", export_out, "Output CSV")->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a grating dataset");
    synth->add_option("--out", synth_args.out, "Output dataset root")->required();
    synth->add_option("--classes", synth_args.classes, "name:frequency list")->capture_default_str();
    synth->add_option("--count", synth_args.count, "Images per class")->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();
    synth->add_option("--side", synth_args.side, "Image side in pixels")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kConfigError;
    }

    if (train->parsed()) {
        if (!train_config.empty()) train_args.config = train_config;
        if (seed_opt->count() > 0) train_args.seed = train_seed;
        return cmd_train(train_args, out, err);
    }
    if (eval->parsed()) {
        if (!eval_out.empty()) eval_args.out = eval_out;
        return cmd_eval(eval_args, out, err);
    }
    if (predict->parsed()) return cmd_predict(predict_model, predict_image, out, err);
    if (exportf->parsed()) return cmd_export_filters(export_model, export_out, out, err);
    if (synth->parsed()) return cmd_synth(synth_args, out, err);
    return kConfigError;
}

} // namespace freqnet::cli
