#pragma once

// In-memory two-class grating task shared by trainer and acceptance tests.

#include <vector>

#include "freqnet/config.hpp"
#include "freqnet/features.hpp"
#include "freqnet/random.hpp"
#include "freqnet/synth.hpp"
#include "freqnet/trainer.hpp"

namespace gratings {

/// Small-image variant of the main hyperparameters, for fast unit runs.
inline freqnet::RunConfig small_config(std::size_t side = 32) {
    freqnet::RunConfig cfg;
    cfg.image_side = side;
    cfg.slicing_levels = 1;
    cfg.pooling.size = 1;
    cfg.pooling.metric = freqnet::DistanceMetric::euclidean;
    cfg.mlp.hidden = {8};
    cfg.mlp.activation = freqnet::Activation::relu;
    cfg.train.epochs = 10;
    return cfg;
}

struct Task {
    std::vector<freqnet::Image> train_images;
    std::vector<freqnet::Image> val_images;
    std::vector<freqnet::Sample> train;
    std::vector<freqnet::Sample> val;
};

/// per_class images of each frequency go to train, a further val_per_class to val.
inline Task make_task(const freqnet::RunConfig& cfg, const std::vector<std::size_t>& freqs, std::size_t per_class,
                      std::size_t val_per_class, std::uint64_t seed) {
    Task t;
    freqnet::Rng rng(seed);
    const freqnet::FeatureExtractor fx(cfg);
    for (std::size_t c = 0; c < freqs.size(); ++c) {
        for (std::size_t i = 0; i < per_class + val_per_class; ++i) {
            freqnet::Image img = freqnet::make_grating(cfg.image_side, freqs[c], rng);
            freqnet::Sample s{fx.extract(img), c};
            if (i < per_class) {
                t.train_images.push_back(std::move(img));
                t.train.push_back(std::move(s));
            } else {
                t.val_images.push_back(std::move(img));
                t.val.push_back(std::move(s));
            }
        }
    }
    return t;
}

} // namespace gratings
