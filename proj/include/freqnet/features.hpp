#pragma once

#include <memory>
#include <span>
#include <vector>

#include "freqnet/config.hpp"
#include "freqnet/freq_filter.hpp"
#include "freqnet/image.hpp"

namespace freqnet {

/// Image -> per-block ring sums: slice, transform, centre, pool.
///
/// Ring maps for every level are resolved once at construction and shared
/// read-only, so one extractor may serve many threads.
class FeatureExtractor {
public:
    FeatureExtractor(std::size_t image_side, std::size_t levels, std::size_t pooling_size,
                     DistanceMetric metric,
                     SpectrumNormalization normalization = SpectrumNormalization::none);
    explicit FeatureExtractor(const RunConfig& cfg);

    std::size_t image_side() const { return image_side_; }
    std::size_t levels() const { return levels_; }
    const std::vector<std::size_t>& layout() const { return layout_; }
    std::size_t feature_length() const { return layout_.back(); }

    RingSumVector extract(const Image& img) const;

    /// extract() for each image, spread over `threads` workers (0 = all cores).
    std::vector<RingSumVector> extract_all(std::span<const Image> images, std::size_t threads = 0) const;

private:
    std::size_t image_side_;
    std::size_t levels_;
    SpectrumNormalization normalization_;
    std::vector<std::size_t> layout_;
    std::vector<std::shared_ptr<const RingIndexMap>> level_maps_;
};

RingSumVector extract_features(const Image& img, const RunConfig& cfg);

} // namespace freqnet
