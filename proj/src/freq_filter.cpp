#include "freqnet/freq_filter.hpp"

#include "freqnet/errors.hpp"
#include "freqnet/random.hpp"
#include "freqnet/slicing.hpp"

namespace freqnet {

void BlockRings::add_block(std::size_t rings) {
    values.resize(values.size() + rings, 0.0);
    offsets.push_back(values.size());
}

std::vector<std::size_t> ring_layout(std::size_t levels, std::size_t image_side, std::size_t pooling_size) {
    validate_slicing(image_side, levels);
    std::vector<std::size_t> offsets{0};
    offsets.reserve(block_count(levels) + 1);
    std::size_t blocks = 1;
    for (std::size_t level = 1; level <= levels; ++level) {
        const std::size_t side = block_side(image_side, level);
        validate_pooling(side, pooling_size);
        const std::size_t rings = side / 2 / pooling_size;
        for (std::size_t b = 0; b < blocks; ++b) offsets.push_back(offsets.back() + rings);
        blocks *= 4;
    }
    return offsets;
}

std::vector<double> ring_sums(const MagnitudeBlock& mag, const RingIndexMap& map) {
    if (mag.side != map.side()) {
        throw ShapeMismatch("magnitude side " + std::to_string(mag.side) + " does not match ring map side " +
                            std::to_string(map.side()));
    }
    std::vector<double> sums(map.ring_count(), 0.0);
    const auto& rings = map.ring_of_cell();
    for (std::size_t i = 0; i < rings.size(); ++i) {
        if (rings[i] != RingIndexMap::kDiscarded) sums[rings[i] - 1] += mag.values[i];
    }
    return sums;
}

std::vector<double> filter_forward(const RingSumVector& sums, const FrequencyFilterBank& bank) {
    if (!sums.same_layout(bank)) throw ShapeMismatch("ring sums and filter bank layouts differ");
    std::vector<double> coeffs(sums.values.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = bank.values[i] * sums.values[i];
    return coeffs;
}

FilterGradient filter_backward(const RingSumVector& sums, std::span<const double> upstream) {
    if (upstream.size() != sums.values.size()) {
        throw ShapeMismatch("upstream gradient length " + std::to_string(upstream.size()) +
                            " does not match " + std::to_string(sums.values.size()) + " coefficients");
    }
    FilterGradient grad;
    grad.offsets = sums.offsets;
    grad.values.resize(upstream.size());
    for (std::size_t i = 0; i < upstream.size(); ++i) grad.values[i] = upstream[i] * sums.values[i];
    return grad;
}

std::size_t clamp_nonnegative(FrequencyFilterBank& bank) {
    std::size_t clamped = 0;
    for (double& w : bank.values) {
        if (w < 0.0) {
            w = 0.0;
            ++clamped;
        }
    }
    return clamped;
}

FrequencyFilterBank init_filter_bank(const std::vector<std::size_t>& layout, double center, double epsilon,
                                     std::uint64_t seed) {
    if (layout.empty() || layout.front() != 0) throw InvalidArgument("malformed ring layout");
    if (epsilon < 0.0) throw InvalidArgument("filter init epsilon must be >= 0");
    FrequencyFilterBank bank;
    bank.offsets = layout;
    bank.values.resize(layout.back());
    Rng rng(seed);
    for (double& w : bank.values) w = rng.uniform(center - epsilon, center + epsilon);
    return bank;
}

} // namespace freqnet
