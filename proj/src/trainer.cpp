#include "freqnet/trainer.hpp"

#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "freqnet/errors.hpp"
#include "freqnet/parallel.hpp"
#include "freqnet/random.hpp"

namespace freqnet {

namespace {

constexpr std::uint64_t kShuffleStream = 3;

} // namespace

MomentumState MomentumState::zeros_like(const FreqNetModel& model) {
    MomentumState s;
    s.filters.assign(model.filters.values.size(), 0.0);
    for (std::size_t l = 0; l < model.mlp.layer_count(); ++l) {
        s.weights.emplace_back(model.mlp.weights[l].size(), 0.0);
        s.biases.emplace_back(model.mlp.biases[l].size(), 0.0);
    }
    return s;
}

ModelGradients compute_gradients(const FreqNetModel& model, const RingSumVector& features, std::size_t class_id) {
    const std::vector<double> coeffs = filter_forward(features, model.filters);
    const ForwardTrace trace = forward(model.mlp, coeffs);
    ModelGradients g;
    g.loss = cross_entropy(trace.probabilities, class_id);
    g.predicted = argmax(trace.probabilities);
    g.mlp = backward(model.mlp, trace, class_id);
    g.filters = filter_backward(features, g.mlp.input);
    return g;
}

void momentum_update(std::span<double> param, std::span<double> velocity, std::span<const double> grad, double lr,
                     double momentum, double grad_scale) {
    if (param.size() != velocity.size() || param.size() != grad.size()) {
        throw ShapeMismatch("momentum_update buffers differ in length");
    }
    for (std::size_t i = 0; i < param.size(); ++i) {
        velocity[i] = momentum * velocity[i] - lr * (grad[i] * grad_scale);
        param[i] += velocity[i];
    }
}

StepResult sgd_step(FreqNetModel& model, MomentumState& state, std::span<const Sample* const> batch, double lr,
                    double momentum) {
    if (batch.empty()) throw InvalidArgument("sgd_step needs a non-empty batch");
    if (state.filters.size() != model.filters.values.size() || state.weights.size() != model.mlp.layer_count()) {
        throw ShapeMismatch("momentum state does not match the model");
    }

    MomentumState grad = MomentumState::zeros_like(model);
    StepResult result;
    for (const Sample* s : batch) {
        const ModelGradients g = compute_gradients(model, s->features, s->class_id);
        result.loss_sum += g.loss;
        if (g.predicted == s->class_id) ++result.correct;
        for (std::size_t i = 0; i < grad.filters.size(); ++i) grad.filters[i] += g.filters.values[i];
        for (std::size_t l = 0; l < grad.weights.size(); ++l) {
            for (std::size_t i = 0; i < grad.weights[l].size(); ++i) grad.weights[l][i] += g.mlp.weights[l][i];
            for (std::size_t i = 0; i < grad.biases[l].size(); ++i) grad.biases[l][i] += g.mlp.biases[l][i];
        }
    }

    const double inv = 1.0 / static_cast<double>(batch.size());
    momentum_update(model.filters.values, state.filters, grad.filters, lr, momentum, inv);
    for (std::size_t l = 0; l < grad.weights.size(); ++l) {
        momentum_update(model.mlp.weights[l], state.weights[l], grad.weights[l], lr, momentum, inv);
        momentum_update(model.mlp.biases[l], state.biases[l], grad.biases[l], lr, momentum, inv);
    }
    result.clamped = clamp_nonnegative(model.filters);
    return result;
}

double effective_lr(std::size_t epoch, const TrainConfig& cfg) {
    return cfg.learning_rate / (1.0 + cfg.lr_decay * static_cast<double>(epoch));
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
    return std::accumulate(counts.begin() + static_cast<std::ptrdiff_t>(truth * classes),
                           counts.begin() + static_cast<std::ptrdiff_t>((truth + 1) * classes), std::size_t{0});
}

std::size_t ConfusionMatrix::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::size_t ConfusionMatrix::diagonal() const {
    std::size_t d = 0;
    for (std::size_t c = 0; c < classes; ++c) d += at(c, c);
    return d;
}

EvalResult evaluate(const FreqNetModel& model, std::span<const Sample> data, std::size_t threads) {
    if (data.empty()) throw InvalidArgument("cannot evaluate on an empty dataset");
    std::vector<std::size_t> predicted(data.size());
    parallel_for(
        data.size(), [&](std::size_t i) { predicted[i] = argmax(predict_probabilities(model, data[i].features)); },
        threads);

    EvalResult r{0.0, ConfusionMatrix(model.class_count())};
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].class_id >= model.class_count()) throw InvalidArgument("sample class id out of range");
        ++r.confusion.counts[data[i].class_id * model.class_count() + predicted[i]];
    }
    r.accuracy = static_cast<double>(r.confusion.diagonal()) / static_cast<double>(data.size());
    return r;
}

TrainResult train(FreqNetModel model, std::span<const Sample> train_set, std::span<const Sample> val_set,
                  const TrainConfig& cfg, const TrainHooks& hooks) {
    if (cfg.batch_size == 0) throw InvalidArgument("batch_size must be positive");
    if (cfg.epochs > 0 && (train_set.empty() || val_set.empty())) {
        throw InvalidArgument("training needs non-empty training and validation sets");
    }

    TrainResult result{model, model, {}};
    result.report.confusion = ConfusionMatrix(model.class_count());
    if (cfg.epochs == 0) return result;

    MomentumState state = MomentumState::zeros_like(model);
    Rng rng(derive_seed(cfg.seed, kShuffleStream));
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    // Only used when features are re-supplied per step.
    std::vector<Sample> fetched;
    std::vector<const Sample*> batch;
    batch.reserve(cfg.batch_size);
    double best = -1.0;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        const double lr = effective_lr(epoch, cfg);
        EpochRecord rec;
        rec.epoch = epoch;
        rec.lr = lr;
        double loss_sum = 0.0;
        std::size_t correct = 0;

        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(start + cfg.batch_size, order.size());
            batch.clear();
            if (hooks.feature_source) {
                fetched.clear();
                for (std::size_t k = start; k < end; ++k) {
                    fetched.push_back({hooks.feature_source(order[k]), train_set[order[k]].class_id});
                }
                for (const auto& s : fetched) batch.push_back(&s);
            } else {
                for (std::size_t k = start; k < end; ++k) batch.push_back(&train_set[order[k]]);
            }
            const StepResult step = sgd_step(model, state, batch, lr, cfg.momentum);
            loss_sum += step.loss_sum;
            correct += step.correct;
            rec.clamped += step.clamped;
            if (hooks.after_batch) hooks.after_batch(model, epoch, step);
        }

        const double n = static_cast<double>(train_set.size());
        rec.train_loss = loss_sum / n;
        rec.train_accuracy = static_cast<double>(correct) / n;
        EvalResult val = evaluate(model, val_set);
        rec.val_accuracy = val.accuracy;
        result.report.epochs.push_back(rec);
        result.report.confusion = val.confusion;
        if (val.accuracy > best) {
            best = val.accuracy;
            result.best_model = model;
            result.report.best_epoch = epoch;
            result.report.best_val_accuracy = val.accuracy;
        }
        if (hooks.after_epoch) hooks.after_epoch(rec);
    }
    result.final_model = std::move(model);
    return result;
}

void write_report_csv(const TrainReport& report, std::ostream& out) {
    out << "epoch,lr,train_loss,train_acc,val_acc,clamped\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : report.epochs) {
        out << r.epoch << ',' << r.lr << ',' << r.train_loss << ',' << r.train_accuracy << ',' << r.val_accuracy << ','
            << r.clamped << '\n';
    }
    out.precision(old_precision);
}

void write_confusion_csv(const ConfusionMatrix& confusion, const std::vector<std::string>& class_names,
                         std::ostream& out) {
    out << "true\\predicted";
    for (const auto& n : class_names) out << ',' << n;
    out << '\n';
    for (std::size_t t = 0; t < confusion.classes; ++t) {
        out << class_names.at(t);
        for (std::size_t p = 0; p < confusion.classes; ++p) out << ',' << confusion.at(t, p);
        out << '\n';
    }
}

} // namespace freqnet
