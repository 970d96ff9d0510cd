#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "freqnet/pooling.hpp"
#include "freqnet/spectral.hpp"

namespace freqnet {

/// Flat per-block storage: block i owns [offsets[i], offsets[i+1]) in
/// `values`, one slot per ring, innermost ring first.
struct BlockRings {
    std::vector<std::size_t> offsets{0};
    std::vector<double> values;

    std::size_t block_count() const { return offsets.size() - 1; }
    std::size_t ring_count(std::size_t block) const { return offsets[block + 1] - offsets[block]; }
    std::span<double> block(std::size_t i) { return std::span(values).subspan(offsets[i], ring_count(i)); }
    std::span<const double> block(std::size_t i) const {
        return std::span(values).subspan(offsets[i], ring_count(i));
    }
    /// Appends a zero-initialised block with `rings` slots.
    void add_block(std::size_t rings);
    bool same_layout(const BlockRings& other) const { return offsets == other.offsets; }

    friend bool operator==(const BlockRings&, const BlockRings&) = default;
};

/// S_i(r): per-ring sums of the unfiltered centred magnitude of every block.
struct RingSumVector : BlockRings {};

/// Trainable non-negative weight per (block, ring).
struct FrequencyFilterBank : BlockRings {};

struct FilterGradient : BlockRings {};

/// Offsets describing a pyramid's ring layout, in pyramid block order.
std::vector<std::size_t> ring_layout(std::size_t levels, std::size_t image_side, std::size_t pooling_size);

/// Sums of mag over each ring of `map`; discarded cells are skipped.
std::vector<double> ring_sums(const MagnitudeBlock& mag, const RingIndexMap& map);

/// C_i(r) = W_i(r) * S_i(r), stacked in pyramid order. Because each weight
/// is constant over its ring this equals filtering the full magnitude
/// element-wise and summing the ring afterwards.
std::vector<double> filter_forward(const RingSumVector& sums, const FrequencyFilterBank& bank);

/// dL/dW_i(r) = upstream_i(r) * S_i(r).
FilterGradient filter_backward(const RingSumVector& sums, std::span<const double> upstream);

/// Truncates negative weights to zero; returns how many were clamped.
std::size_t clamp_nonnegative(FrequencyFilterBank& bank);

/// Weights uniform in [center - epsilon, center + epsilon], seeded.
FrequencyFilterBank init_filter_bank(const std::vector<std::size_t>& layout, double center, double epsilon,
                                     std::uint64_t seed);

} // namespace freqnet
