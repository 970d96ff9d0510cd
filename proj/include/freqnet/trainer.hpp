#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "freqnet/config.hpp"
#include "freqnet/freq_filter.hpp"
#include "freqnet/model.hpp"

namespace freqnet {

/// Cached features of one labelled image.
struct Sample {
    RingSumVector features;
    std::size_t class_id = 0;
};

/// Velocity buffers, one per trainable parameter.
struct MomentumState {
    std::vector<double> filters;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static MomentumState zeros_like(const FreqNetModel& model);
};

/// Loss gradient for one sample with respect to every parameter.
struct ModelGradients {
    FilterGradient filters;
    MlpGradients mlp;
    double loss = 0.0;
    std::size_t predicted = 0;
};

ModelGradients compute_gradients(const FreqNetModel& model, const RingSumVector& features, std::size_t class_id);

struct StepResult {
    double loss_sum = 0.0;
    std::size_t correct = 0;
    std::size_t clamped = 0;
};

/// v <- momentum * v - lr * grad_scale * g, param <- param + v, element-wise.
void momentum_update(std::span<double> param, std::span<double> velocity, std::span<const double> grad, double lr,
                     double momentum, double grad_scale = 1.0);

/// One SGD-with-momentum update on the batch-mean gradient:
/// v <- momentum * v - lr * g, theta <- theta + v, then negative filter
/// weights are truncated to zero. Loss and accuracy are measured before
/// the update.
StepResult sgd_step(FreqNetModel& model, MomentumState& state, std::span<const Sample* const> batch, double lr,
                    double momentum);

/// Inverse-time decay: lr / (1 + decay * epoch).
double effective_lr(std::size_t epoch, const TrainConfig& cfg);

/// Square matrix, rows = true class, columns = predicted class.
struct ConfusionMatrix {
    std::size_t classes = 0;
    std::vector<std::size_t> counts;

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t n) : classes(n), counts(n * n, 0) {}
    std::size_t at(std::size_t truth, std::size_t predicted) const { return counts[truth * classes + predicted]; }
    std::size_t row_sum(std::size_t truth) const;
    std::size_t total() const;
    std::size_t diagonal() const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct EvalResult {
    double accuracy = 0.0;
    ConfusionMatrix confusion;
};

/// Argmax classification; ties go to the lowest class index.
EvalResult evaluate(const FreqNetModel& model, std::span<const Sample> data, std::size_t threads = 0);

struct EpochRecord {
    std::size_t epoch = 0;
    double lr = 0.0;
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
    std::size_t clamped = 0;

    friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    ConfusionMatrix confusion; // final model on the validation set
    std::size_t best_epoch = 0;
    double best_val_accuracy = 0.0;

    friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

struct TrainResult {
    FreqNetModel final_model;
    FreqNetModel best_model; // highest validation accuracy, earliest on ties
    TrainReport report;
};

struct TrainHooks {
    /// Called after every mini-batch update.
    std::function<void(const FreqNetModel&, std::size_t epoch, const StepResult&)> after_batch;
    /// When set, training features for sample i are fetched from here on
    /// every step instead of from the cached Sample.
    std::function<RingSumVector(std::size_t)> feature_source;
    /// Called after every epoch's metrics are recorded.
    std::function<void(const EpochRecord&)> after_epoch;
};

/// Mini-batch training with a seeded reshuffle every epoch.
TrainResult train(FreqNetModel model, std::span<const Sample> train_set, std::span<const Sample> val_set,
                  const TrainConfig& cfg, const TrainHooks& hooks = {});

void write_report_csv(const TrainReport& report, std::ostream& out);
void write_confusion_csv(const ConfusionMatrix& confusion, const std::vector<std::string>& class_names,
                         std::ostream& out);

} // namespace freqnet
