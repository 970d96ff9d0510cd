#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "freqnet/dataset.hpp"
#include "freqnet/errors.hpp"
#include "freqnet/image.hpp"
#include "freqnet/random.hpp"
#include "test_util.hpp"

using namespace freqnet;
using testutil::TempDir;

namespace {

std::string pgm_bytes(std::size_t h, std::size_t w, const std::vector<unsigned char>& px) {
    std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    s.append(px.begin(), px.end());
    return s;
}

void write_tiny_pgm(const std::filesystem::path& p) {
    testutil::write_bytes(p, pgm_bytes(4, 4, std::vector<unsigned char>(16, 128)));
}

LabeledIndex make_tree(const TempDir& dir, const std::vector<std::pair<std::string, std::size_t>>& classes) {
    for (const auto& [name, n] : classes) {
        std::filesystem::create_directories(dir / name);
        for (std::size_t i = 0; i < n; ++i) write_tiny_pgm(dir.path() / name / (name + std::to_string(i) + ".pgm"));
    }
    return scan_dataset(dir.path());
}

} // namespace

TEST_CASE("binary PGM bytes scale to [0, 1]") {
    TempDir dir;
    testutil::write_bytes(dir / "a.pgm", pgm_bytes(2, 2, {0, 255, 255, 0}));
    const Image img = load_image(dir / "a.pgm");
    CHECK(img.height == 2);
    CHECK(img.width == 2);
    CHECK(img.data == std::vector<double>{0.0, 1.0, 1.0, 0.0});
}

TEST_CASE("ASCII PGM with comments") {
    TempDir dir;
    testutil::write_bytes(dir / "a.pgm", "P2\n# note\n3 1\n15\n0 15 5\n");
    const Image img = load_image(dir / "a.pgm");
    REQUIRE(img.size() == 3);
    CHECK(img.data[1] == 1.0);
    CHECK(img.data[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("PNG decoding") {
    TempDir dir;
    SUBCASE("black gray PNG is all zeros") {
        save_png(Image(8, 8, 0.0), dir / "black.png");
        const Image img = load_image(dir / "black.png");
        CHECK(img.height == 8);
        CHECK(img.width == 8);
        CHECK(std::all_of(img.data.begin(), img.data.end(), [](double v) { return v == 0.0; }));
    }
    SUBCASE("pure red RGB goes through the luma weights") {
        std::vector<unsigned char> rgb;
        for (int i = 0; i < 6; ++i) rgb.insert(rgb.end(), {255, 0, 0});
        save_png_rgb(2, 3, rgb, dir / "red.png");
        const Image img = load_image(dir / "red.png");
        REQUIRE(img.size() == 6);
        for (double v : img.data) CHECK(v == doctest::Approx(0.299).epsilon(1e-12));
    }
    SUBCASE("mixed RGB pixel") {
        save_png_rgb(1, 1, {10, 200, 30}, dir / "mix.png");
        const double expected = (0.299 * 10 + 0.587 * 200 + 0.114 * 30) / 255.0;
        CHECK(load_image(dir / "mix.png").data[0] == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("gray round trip keeps 8-bit levels") {
        Image src(3, 5);
        for (std::size_t i = 0; i < src.size(); ++i) src.data[i] = static_cast<double>(i * 17) / 255.0;
        save_png(src, dir / "g.png");
        const Image back = load_image(dir / "g.png");
        for (std::size_t i = 0; i < src.size(); ++i) CHECK(back.data[i] == doctest::Approx(src.data[i]).epsilon(1e-12));
    }
}

TEST_CASE("load_image error classes") {
    TempDir dir;
    CHECK_THROWS_AS(load_image(dir / "missing.png"), IoError);
    testutil::write_bytes(dir / "junk.png", "not an image at all");
    CHECK_THROWS_AS(load_image(dir / "junk.png"), DecodeError);
    testutil::write_bytes(dir / "short.pgm", "P5\n4 4\n255\n\x01\x02");
    CHECK_THROWS_AS(load_image(dir / "short.pgm"), DecodeError);
    std::string png_head = "\x89PNG\r\n\x1a\n";
    testutil::write_bytes(dir / "trunc.png", png_head + "garbage");
    CHECK_THROWS_AS(load_image(dir / "trunc.png"), DecodeError);
}

TEST_CASE("resize") {
    SUBCASE("constant stays constant") {
        for (std::size_t side : {2u, 6u, 10u, 128u}) {
            const Image out = resize(Image(7, 13, 0.5), side);
            CHECK(out.height == side);
            CHECK(out.width == side);
            for (double v : out.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
        }
    }
    SUBCASE("4x4 checkerboard to 2x2 averages each 2x2 patch") {
        Image board(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) board.at(r, c) = (r + c) % 2 ? 1.0 : 0.0;
        const Image out = resize(board, 2);
        for (double v : out.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("exact halving of arbitrary content is a patch mean") {
        Rng rng(5);
        Image src(8, 8);
        for (double& v : src.data) v = rng.uniform();
        const Image out = resize(src, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                const double mean = (src.at(2 * r, 2 * c) + src.at(2 * r + 1, 2 * c) + src.at(2 * r, 2 * c + 1) +
                                     src.at(2 * r + 1, 2 * c + 1)) /
                                    4.0;
                CHECK(out.at(r, c) == doctest::Approx(mean).epsilon(1e-14));
            }
    }
    SUBCASE("576 to 128") {
        const Image out = resize(Image(576, 576, 0.25), 128);
        CHECK(out.height == 128);
        CHECK(out.width == 128);
    }
    SUBCASE("same size is identity") {
        Image src(4, 4);
        for (std::size_t i = 0; i < 16; ++i) src.data[i] = static_cast<double>(i);
        CHECK(resize(src, 4) == src);
    }
    CHECK_THROWS_AS(resize(Image(4, 4), 3), InvalidArgument);
    CHECK_THROWS_AS(resize(Image(4, 4), 0), InvalidArgument);
}

TEST_CASE("scan_dataset") {
    SUBCASE("two classes of 160") {
        TempDir dir;
        const auto index = make_tree(dir, {{"canvas", 160}, {"cushion", 160}});
        CHECK(index.entries.size() == 320);
        CHECK(index.class_names == std::vector<std::string>{"canvas", "cushion"});
        CHECK(index.class_sizes() == std::vector<std::size_t>{160, 160});
        CHECK(std::is_sorted(index.entries.begin(), index.entries.end(),
                             [](const auto& a, const auto& b) { return a.path < b.path; }));
    }
    SUBCASE("one file") {
        TempDir dir;
        const auto index = make_tree(dir, {{"only", 1}});
        CHECK(index.entries.size() == 1);
        CHECK(index.class_count() == 1);
    }
    SUBCASE("empty directories") {
        TempDir dir;
        std::filesystem::create_directories(dir / "a");
        std::filesystem::create_directories(dir / "b");
        CHECK_THROWS_AS(scan_dataset(dir.path()), EmptyDataset);
    }
    SUBCASE("non-image files are ignored and extensions are case-insensitive") {
        TempDir dir;
        std::filesystem::create_directories(dir / "a");
        write_tiny_pgm(dir.path() / "a" / "x.PGM");
        testutil::write_bytes(dir.path() / "a" / "readme.txt", "hi");
        CHECK(scan_dataset(dir.path()).entries.size() == 1);
    }
    SUBCASE("missing root") {
        TempDir dir;
        CHECK_THROWS_AS(scan_dataset(dir / "nope"), IoError);
    }
    SUBCASE("repeat scans agree") {
        TempDir dir;
        const auto a = make_tree(dir, {{"x", 5}, {"y", 3}});
        CHECK(scan_dataset(dir.path()) == a);
    }
}

TEST_CASE("select_classes renumbers in the requested order") {
    TempDir dir;
    const auto index = make_tree(dir, {{"a", 2}, {"b", 3}, {"c", 4}});
    const auto sub = select_classes(index, {"c", "a"});
    CHECK(sub.class_names == std::vector<std::string>{"c", "a"});
    CHECK(sub.class_sizes() == std::vector<std::size_t>{4, 2});
    CHECK_THROWS_AS(select_classes(index, {"zzz"}), InvalidArgument);
}

TEST_CASE("split") {
    TempDir dir;
    const auto index = make_tree(dir, {{"canvas", 160}, {"cushion", 160}});
    SUBCASE("75/25 of 320") {
        const auto [tr, va] = split(index, {0.75, 3});
        CHECK(tr.entries.size() == 240);
        CHECK(va.entries.size() == 80);
        CHECK(tr.class_sizes() == std::vector<std::size_t>{120, 120});
    }
    SUBCASE("deterministic per seed") {
        const auto a = split(index, {0.75, 11});
        const auto b = split(index, {0.75, 11});
        CHECK(a.first == b.first);
        CHECK(a.second == b.second);
        const auto c = split(index, {0.75, 12});
        CHECK_FALSE(a.first == c.first);
    }
}

TEST_CASE("split of four entries at one half") {
    TempDir dir;
    const auto index = make_tree(dir, {{"one", 4}});
    const auto [tr, va] = split(index, {0.5, 0});
    CHECK(tr.entries.size() == 2);
    CHECK(va.entries.size() == 2);
    for (const auto& e : tr.entries)
        CHECK(std::find(va.entries.begin(), va.entries.end(), e) == va.entries.end());
}

TEST_CASE("split stratifies and partitions for random class sizes") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        LabeledIndex index;
        const std::size_t classes = 1 + rng.below(5);
        for (std::size_t c = 0; c < classes; ++c) {
            index.class_names.push_back("c" + std::to_string(c));
            const std::size_t n = 2 + rng.below(40);
            for (std::size_t i = 0; i < n; ++i)
                index.entries.push_back({"c" + std::to_string(c) + "/" + std::to_string(i), c});
        }
        const double frac = 0.05 + 0.9 * rng.uniform();
        const auto [tr, va] = split(index, {frac, rng.next()});
        const auto sizes = index.class_sizes();
        const auto tr_sizes = tr.class_sizes();
        for (std::size_t c = 0; c < classes; ++c)
            CHECK(tr_sizes[c] == static_cast<std::size_t>(std::floor(frac * static_cast<double>(sizes[c]))));
        std::multiset<std::string> all, joined;
        for (const auto& e : index.entries) all.insert(e.path.string());
        for (const auto& e : tr.entries) joined.insert(e.path.string());
        for (const auto& e : va.entries) joined.insert(e.path.string());
        CHECK(all == joined);
    }
}

TEST_CASE("split rejects bad input") {
    LabeledIndex tiny{{{"a/0", 0}}, {"a"}};
    CHECK_THROWS_AS(split(tiny, {0.75, 0}), InvalidArgument);
    LabeledIndex two{{{"a/0", 0}, {"a/1", 0}}, {"a"}};
    CHECK_THROWS_AS(split(two, {1.5, 0}), InvalidArgument);
    CHECK_THROWS_AS(split(two, {0.0, 0}), InvalidArgument);
}

TEST_CASE("load_images resizes every entry") {
    TempDir dir;
    const auto index = make_tree(dir, {{"a", 3}, {"b", 2}});
    const auto images = load_images(index, 8, 2);
    REQUIRE(images.size() == 5);
    for (std::size_t i = 0; i < images.size(); ++i) {
        CHECK(images[i].image.height == 8);
        CHECK(images[i].class_id == index.entries[i].class_id);
        CHECK(images[i].image.data[0] == doctest::Approx(128.0 / 255.0));
    }
}
