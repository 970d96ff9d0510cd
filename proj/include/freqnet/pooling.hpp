#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace freqnet {

enum class DistanceMetric { euclidean, chebyshev };

std::string to_string(DistanceMetric m);
DistanceMetric parse_metric(std::string_view name);

/// Assignment of every centred-spectrum cell to a frequency ring.
///
/// Rings are 1-based; ring r spans distances [(r-1)*p, r*p) from the
/// centre (side/2, side/2). Under the Chebyshev metric the outermost row
/// and column (distance side/2) fold into the last ring so nothing is
/// lost. Under the Euclidean metric cells at distance >= side/2 fall
/// outside the inscribed circle and are discarded.
class RingIndexMap {
public:
    static constexpr std::uint32_t kDiscarded = 0;

    RingIndexMap(std::size_t side, std::size_t pooling_size, DistanceMetric metric);

    std::size_t side() const { return side_; }
    std::size_t pooling_size() const { return pooling_size_; }
    DistanceMetric metric() const { return metric_; }
    std::size_t ring_count() const { return ring_count_; }

    /// Ring of cell (u, v) in 1..ring_count, or kDiscarded.
    std::uint32_t ring_of(std::size_t u, std::size_t v) const { return ring_of_cell_[u * side_ + v]; }
    const std::vector<std::uint32_t>& ring_of_cell() const { return ring_of_cell_; }

    /// Cells per ring, indexed by ring - 1.
    const std::vector<std::size_t>& ring_populations() const { return populations_; }
    std::size_t discarded_count() const { return discarded_; }

private:
    std::size_t side_;
    std::size_t pooling_size_;
    DistanceMetric metric_;
    std::size_t ring_count_;
    std::vector<std::uint32_t> ring_of_cell_;
    std::vector<std::size_t> populations_;
    std::size_t discarded_ = 0;
};

/// Throws InvalidArgument unless side is even and pooling_size divides side/2.
void validate_pooling(std::size_t side, std::size_t pooling_size);

RingIndexMap build_ring_map(std::size_t side, std::size_t pooling_size, DistanceMetric metric);

/// Shared read-only map per (side, pooling, metric), built on first use.
std::shared_ptr<const RingIndexMap> cached_ring_map(std::size_t side, std::size_t pooling_size,
                                                    DistanceMetric metric);

/// Total ring count over every block of a levels-deep pyramid.
std::size_t feature_length(std::size_t levels, std::size_t image_side, std::size_t pooling_size);

} // namespace freqnet
