#pragma once

#include <cstddef>
#include <vector>

#include "freqnet/image.hpp"

namespace freqnet {

struct BlockMeta {
    std::size_t level = 1; // 1 = whole image
    std::size_t row = 0;   // block grid coordinates within the level
    std::size_t col = 0;

    friend bool operator==(const BlockMeta&, const BlockMeta&) = default;
};

/// Quadtree decomposition of a square image. Level l holds 4^(l-1) blocks
/// of side image_side / 2^(l-1); blocks are stored level-major, then
/// row-major within a level.
struct BlockPyramid {
    std::size_t levels = 0;
    std::vector<Image> blocks;
    std::vector<BlockMeta> meta;
};

/// Number of blocks in a pyramid of the given depth.
std::size_t block_count(std::size_t levels);

/// Side of the blocks at `level` for an image of side `image_side`.
std::size_t block_side(std::size_t image_side, std::size_t level);

/// Throws InvalidArgument unless a square image of this side can be
/// sliced into `levels` levels with an even smallest block of side >= 4.
void validate_slicing(std::size_t image_side, std::size_t levels);

BlockPyramid slice_pyramid(const Image& img, std::size_t levels);

} // namespace freqnet
