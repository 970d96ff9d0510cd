#include "freqnet/pooling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "freqnet/errors.hpp"
#include "freqnet/slicing.hpp"

namespace freqnet {

std::string to_string(DistanceMetric m) {
    return m == DistanceMetric::euclidean ? "euclidean" : "chebyshev";
}

DistanceMetric parse_metric(std::string_view name) {
    if (name == "euclidean") return DistanceMetric::euclidean;
    if (name == "chebyshev") return DistanceMetric::chebyshev;
    throw InvalidArgument("unknown pooling metric '" + std::string(name) +
                          "' (expected euclidean or chebyshev)");
}

void validate_pooling(std::size_t side, std::size_t pooling_size) {
    if (side < 2 || side % 2 != 0) {
        throw InvalidArgument("ring map side must be even and >= 2, got " + std::to_string(side));
    }
    if (pooling_size == 0 || (side / 2) % pooling_size != 0) {
        throw InvalidArgument("pooling size " + std::to_string(pooling_size) + " does not divide " +
                              std::to_string(side / 2));
    }
}

RingIndexMap::RingIndexMap(std::size_t side, std::size_t pooling_size, DistanceMetric metric)
    : side_(side), pooling_size_(pooling_size), metric_(metric) {
    validate_pooling(side, pooling_size);
    const std::size_t half = side / 2;
    ring_count_ = half / pooling_size;
    ring_of_cell_.assign(side * side, kDiscarded);
    populations_.assign(ring_count_, 0);

    const auto c = static_cast<std::ptrdiff_t>(half);
    for (std::size_t u = 0; u < side; ++u) {
        for (std::size_t v = 0; v < side; ++v) {
            const auto du = std::abs(static_cast<std::ptrdiff_t>(u) - c);
            const auto dv = std::abs(static_cast<std::ptrdiff_t>(v) - c);
            std::size_t ring;
            if (metric == DistanceMetric::chebyshev) {
                const auto d = static_cast<std::size_t>(std::max(du, dv));
                ring = std::min(d / pooling_size + 1, ring_count_);
            } else {
                // Compare squared integers so the circle boundary is exact.
                const auto d2 = static_cast<std::size_t>(du * du + dv * dv);
                if (d2 >= half * half) {
                    ++discarded_;
                    continue;
                }
                const double d = std::sqrt(static_cast<double>(d2));
                ring = static_cast<std::size_t>(std::floor(d / static_cast<double>(pooling_size))) + 1;
                // Guard sqrt rounding at exact multiples of the pooling size.
                const std::size_t lo = (ring - 1) * pooling_size;
                if (d2 < lo * lo) --ring;
                else if (d2 >= (lo + pooling_size) * (lo + pooling_size)) ++ring;
            }
            ring_of_cell_[u * side + v] = static_cast<std::uint32_t>(ring);
            ++populations_[ring - 1];
        }
    }
}

RingIndexMap build_ring_map(std::size_t side, std::size_t pooling_size, DistanceMetric metric) {
    return RingIndexMap(side, pooling_size, metric);
}

std::shared_ptr<const RingIndexMap> cached_ring_map(std::size_t side, std::size_t pooling_size,
                                                    DistanceMetric metric) {
    using Key = std::tuple<std::size_t, std::size_t, DistanceMetric>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const RingIndexMap>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[Key{side, pooling_size, metric}];
    if (!slot) slot = std::make_shared<const RingIndexMap>(side, pooling_size, metric);
    return slot;
}

std::size_t feature_length(std::size_t levels, std::size_t image_side, std::size_t pooling_size) {
    validate_slicing(image_side, levels);
    std::size_t total = 0;
    std::size_t blocks = 1;
    for (std::size_t level = 1; level <= levels; ++level) {
        const std::size_t side = block_side(image_side, level);
        validate_pooling(side, pooling_size);
        total += blocks * (side / 2 / pooling_size);
        blocks *= 4;
    }
    return total;
}

} // namespace freqnet
