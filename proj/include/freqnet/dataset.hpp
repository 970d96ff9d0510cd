#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "freqnet/image.hpp"

namespace freqnet {

struct IndexEntry {
    std::filesystem::path path;
    std::size_t class_id = 0;

    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Labeled file list; class_id indexes class_names.
struct LabeledIndex {
    std::vector<IndexEntry> entries;
    std::vector<std::string> class_names;

    std::size_t class_count() const { return class_names.size(); }
    std::vector<std::size_t> class_sizes() const;

    friend bool operator==(const LabeledIndex&, const LabeledIndex&) = default;
};

struct SplitSpec {
    double train_fraction = 0.75;
    std::uint64_t seed = 0;
};

/// True for extensions load_image understands (.png, .pgm), case-insensitive.
bool is_image_file(const std::filesystem::path& path);

/// Scans `<root>/<class>/<files>`. Classes are the subdirectory names in
/// lexicographic order; entries are sorted by path. Subdirectories without
/// any image file are skipped. Throws EmptyDataset if nothing is found.
LabeledIndex scan_dataset(const std::filesystem::path& root);

/// Keeps only the named classes (renumbered in the given order).
LabeledIndex select_classes(const LabeledIndex& index, const std::vector<std::string>& names);

/// Stratified split: floor(fraction * n_c) entries of every class go to the
/// training side after a seeded per-class shuffle.
std::pair<LabeledIndex, LabeledIndex> split(const LabeledIndex& index, const SplitSpec& spec);

struct LabeledImage {
    Image image;
    std::size_t class_id = 0;
};

/// Loads and resizes every entry to side x side, fanning out across
/// `threads` workers (0 = hardware concurrency).
std::vector<LabeledImage> load_images(const LabeledIndex& index, std::size_t side,
                                      std::size_t threads = 0);

} // namespace freqnet
