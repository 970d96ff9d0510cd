#include "doctest.h"

#include "freqnet/errors.hpp"
#include "freqnet/random.hpp"
#include "freqnet/slicing.hpp"
#include "oracles.hpp"

using namespace freqnet;

TEST_CASE("block_count") {
    CHECK(block_count(1) == 1);
    CHECK(block_count(3) == 21);
    // (4^6 - 1) / 3
    CHECK(block_count(6) == 1365);
}

TEST_CASE("three levels on 128 gives 21 blocks with the right sides") {
    Rng rng(1);
    const auto pyr = slice_pyramid(oracle::random_image(128, rng), 3);
    REQUIRE(pyr.blocks.size() == 21);
    REQUIRE(pyr.meta.size() == 21);
    for (std::size_t i = 0; i < 21; ++i) {
        const std::size_t level = i == 0 ? 1 : (i < 5 ? 2 : 3);
        CHECK(pyr.meta[i].level == level);
        CHECK(pyr.blocks[i].height == 128u >> (level - 1));
        CHECK(pyr.blocks[i].square());
    }
}

TEST_CASE("one level is the identity") {
    Rng rng(2);
    const Image img = oracle::random_image(16, rng);
    const auto pyr = slice_pyramid(img, 1);
    REQUIRE(pyr.blocks.size() == 1);
    CHECK(pyr.blocks[0] == img);
}

TEST_CASE("8x8 into 4x4 blocks matches direct index arithmetic") {
    Image img(8, 8);
    for (std::size_t i = 0; i < 64; ++i) img.data[i] = static_cast<double>(i);
    const auto pyr = slice_pyramid(img, 2);
    REQUIRE(pyr.blocks.size() == 5);
    for (std::size_t b = 1; b < 5; ++b) {
        const auto& m = pyr.meta[b];
        CHECK(m.row == (b - 1) / 2);
        CHECK(m.col == (b - 1) % 2);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                CHECK(pyr.blocks[b].at(r, c) == static_cast<double>((m.row * 4 + r) * 8 + m.col * 4 + c));
    }
}

TEST_CASE("every level tiles the image and conserves energy") {
    Rng rng(3);
    for (auto [side, levels] : {std::pair<std::size_t, std::size_t>{16, 3}, {32, 4}, {128, 3}, {24, 2}}) {
        const Image img = oracle::random_image(side, rng);
        const auto pyr = slice_pyramid(img, levels);
        CHECK(pyr.blocks.size() == block_count(levels));
        double total = 0.0;
        for (double v : img.data) total += v * v;
        for (std::size_t l = 1; l <= levels; ++l) {
            Image rebuilt(side, side, -1.0);
            double energy = 0.0;
            std::size_t seen = 0;
            for (std::size_t b = 0; b < pyr.blocks.size(); ++b) {
                if (pyr.meta[b].level != l) continue;
                ++seen;
                const auto& blk = pyr.blocks[b];
                CHECK(blk.height == block_side(side, l));
                for (std::size_t r = 0; r < blk.height; ++r)
                    for (std::size_t c = 0; c < blk.width; ++c) {
                        double& dst = rebuilt.at(pyr.meta[b].row * blk.height + r, pyr.meta[b].col * blk.width + c);
                        CHECK(dst == -1.0);
                        dst = blk.at(r, c);
                        energy += dst * dst;
                    }
            }
            CHECK(seen == (std::size_t{1} << (2 * (l - 1))));
            CHECK(rebuilt == img);
            CHECK(energy == doctest::Approx(total).epsilon(1e-12));
        }
    }
}

TEST_CASE("slicing preconditions") {
    CHECK_NOTHROW(validate_slicing(128, 6));
    CHECK_THROWS_AS(validate_slicing(128, 7), InvalidArgument); // smallest block would be 2
    CHECK_THROWS_AS(validate_slicing(12, 3), InvalidArgument);  // 12 / 4 = 3 is odd
    CHECK_THROWS_AS(validate_slicing(20, 3), InvalidArgument);  // 20 / 4 = 5 is odd
    CHECK_THROWS_AS(validate_slicing(128, 0), InvalidArgument);
    CHECK_THROWS_AS(slice_pyramid(Image(8, 16), 1), InvalidArgument);
}
