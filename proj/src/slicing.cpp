#include "freqnet/slicing.hpp"

#include <string>

#include "freqnet/errors.hpp"

namespace freqnet {

std::size_t block_count(std::size_t levels) {
    std::size_t total = 0;
    std::size_t per_level = 1;
    for (std::size_t l = 1; l <= levels; ++l) {
        total += per_level;
        per_level *= 4;
    }
    return total;
}

std::size_t block_side(std::size_t image_side, std::size_t level) {
    return image_side >> (level - 1);
}

void validate_slicing(std::size_t image_side, std::size_t levels) {
    if (levels == 0) throw InvalidArgument("slicing levels must be >= 1");
    if (levels > 16) throw InvalidArgument("slicing levels must be <= 16");
    const std::size_t divisor = std::size_t{1} << (levels - 1);
    if (image_side % divisor != 0) {
        throw InvalidArgument("image side " + std::to_string(image_side) + " is not divisible by " +
                              std::to_string(divisor) + " for " + std::to_string(levels) + " levels");
    }
    const std::size_t smallest = image_side / divisor;
    if (smallest < 4 || smallest % 2 != 0) {
        throw InvalidArgument("smallest block side " + std::to_string(smallest) +
                              " must be even and >= 4");
    }
}

BlockPyramid slice_pyramid(const Image& img, std::size_t levels) {
    if (!img.square()) {
        throw InvalidArgument("slicing needs a square image, got " + std::to_string(img.height) + "x" +
                              std::to_string(img.width));
    }
    validate_slicing(img.width, levels);

    BlockPyramid pyr;
    pyr.levels = levels;
    pyr.blocks.reserve(block_count(levels));
    pyr.meta.reserve(block_count(levels));
    for (std::size_t level = 1; level <= levels; ++level) {
        const std::size_t side = block_side(img.width, level);
        const std::size_t grid = img.width / side;
        for (std::size_t br = 0; br < grid; ++br) {
            for (std::size_t bc = 0; bc < grid; ++bc) {
                Image block(side, side);
                for (std::size_t r = 0; r < side; ++r) {
                    const double* src = &img.data[(br * side + r) * img.width + bc * side];
                    std::copy(src, src + side, &block.data[r * side]);
                }
                pyr.blocks.push_back(std::move(block));
                pyr.meta.push_back({level, br, bc});
            }
        }
    }
    return pyr;
}

} // namespace freqnet
