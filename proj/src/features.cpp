#include "freqnet/features.hpp"

#include <algorithm>

#include "freqnet/errors.hpp"
#include "freqnet/parallel.hpp"
#include "freqnet/slicing.hpp"
#include "freqnet/spectral.hpp"

namespace freqnet {

FeatureExtractor::FeatureExtractor(std::size_t image_side, std::size_t levels, std::size_t pooling_size,
                                   DistanceMetric metric, SpectrumNormalization normalization)
    : image_side_(image_side),
      levels_(levels),
      normalization_(normalization),
      layout_(ring_layout(levels, image_side, pooling_size)) {
    for (std::size_t level = 1; level <= levels; ++level) {
        level_maps_.push_back(cached_ring_map(block_side(image_side, level), pooling_size, metric));
    }
}

FeatureExtractor::FeatureExtractor(const RunConfig& cfg)
    : FeatureExtractor(cfg.image_side, cfg.slicing_levels, cfg.pooling.size, cfg.pooling.metric,
                       cfg.features.normalization) {}

RingSumVector FeatureExtractor::extract(const Image& img) const {
    if (img.height != image_side_ || img.width != image_side_) {
        throw ShapeMismatch("expected a " + std::to_string(image_side_) + "x" + std::to_string(image_side_) +
                            " image, got " + std::to_string(img.height) + "x" + std::to_string(img.width));
    }
    const BlockPyramid pyr = slice_pyramid(img, levels_);
    RingSumVector sums;
    sums.offsets = layout_;
    sums.values.resize(layout_.back());
    for (std::size_t b = 0; b < pyr.blocks.size(); ++b) {
        const RingIndexMap& map = *level_maps_[pyr.meta[b].level - 1];
        const std::vector<double> s = ring_sums(magnitude_centered(dft2d(pyr.blocks[b])), map);
        const double side = static_cast<double>(pyr.blocks[b].width);
        double scale = 1.0;
        if (normalization_ == SpectrumNormalization::unitary) scale = 1.0 / side;
        if (normalization_ == SpectrumNormalization::block_area) scale = 1.0 / (side * side);
        std::transform(s.begin(), s.end(), sums.block(b).begin(), [scale](double v) { return v * scale; });
    }
    return sums;
}

std::vector<RingSumVector> FeatureExtractor::extract_all(std::span<const Image> images,
                                                         std::size_t threads) const {
    std::vector<RingSumVector> out(images.size());
    parallel_for(
        images.size(), [&](std::size_t i) { out[i] = extract(images[i]); }, threads);
    return out;
}

RingSumVector extract_features(const Image& img, const RunConfig& cfg) {
    return FeatureExtractor(cfg).extract(img);
}

} // namespace freqnet
