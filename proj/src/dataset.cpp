#include "freqnet/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "freqnet/errors.hpp"
#include "freqnet/parallel.hpp"
#include "freqnet/random.hpp"

namespace freqnet {

namespace fs = std::filesystem;

std::vector<std::size_t> LabeledIndex::class_sizes() const {
    std::vector<std::size_t> sizes(class_names.size(), 0);
    for (const auto& e : entries) ++sizes.at(e.class_id);
    return sizes;
}

bool is_image_file(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".pgm";
}

LabeledIndex scan_dataset(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError("dataset root '" + root.string() + "' is not a directory");
    }

    std::vector<fs::path> class_dirs;
    try {
        for (const auto& d : fs::directory_iterator(root)) {
            if (d.is_directory()) class_dirs.push_back(d.path());
        }
    } catch (const fs::filesystem_error& e) {
        throw IoError(std::string("cannot scan dataset: ") + e.what());
    }
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    LabeledIndex index;
    for (const auto& dir : class_dirs) {
        std::vector<fs::path> files;
        try {
            for (const auto& f : fs::directory_iterator(dir)) {
                if (f.is_regular_file() && is_image_file(f.path())) files.push_back(f.path());
            }
        } catch (const fs::filesystem_error& e) {
            throw IoError(std::string("cannot scan class directory: ") + e.what());
        }
        if (files.empty()) continue;
        std::sort(files.begin(), files.end());
        const std::size_t id = index.class_names.size();
        index.class_names.push_back(dir.filename().string());
        for (auto& f : files) index.entries.push_back({std::move(f), id});
    }
    if (index.entries.empty()) {
        throw EmptyDataset("no images found under '" + root.string() + "'");
    }
    return index;
}

LabeledIndex select_classes(const LabeledIndex& index, const std::vector<std::string>& names) {
    LabeledIndex out;
    std::vector<std::ptrdiff_t> remap(index.class_names.size(), -1);
    for (const auto& name : names) {
        auto it = std::find(index.class_names.begin(), index.class_names.end(), name);
        if (it == index.class_names.end()) throw InvalidArgument("unknown class '" + name + "'");
        const auto old_id = static_cast<std::size_t>(it - index.class_names.begin());
        if (remap[old_id] >= 0) throw InvalidArgument("class '" + name + "' selected twice");
        remap[old_id] = static_cast<std::ptrdiff_t>(out.class_names.size());
        out.class_names.push_back(name);
    }
    for (const auto& e : index.entries) {
        if (remap[e.class_id] >= 0) out.entries.push_back({e.path, static_cast<std::size_t>(remap[e.class_id])});
    }
    return out;
}

std::pair<LabeledIndex, LabeledIndex> split(const LabeledIndex& index, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw InvalidArgument("train_fraction must lie in (0, 1)");
    }
    std::vector<std::vector<IndexEntry>> by_class(index.class_names.size());
    for (const auto& e : index.entries) by_class.at(e.class_id).push_back(e);

    LabeledIndex train{{}, index.class_names};
    LabeledIndex val{{}, index.class_names};
    Rng rng(spec.seed);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        if (members.size() < 2) {
            throw InvalidArgument("class '" + index.class_names[c] + "' has fewer than 2 entries");
        }
        rng.shuffle(std::span(members));
        const auto n_train = static_cast<std::size_t>(
            std::floor(spec.train_fraction * static_cast<double>(members.size())));
        for (std::size_t i = 0; i < members.size(); ++i) {
            (i < n_train ? train : val).entries.push_back(members[i]);
        }
    }
    return {std::move(train), std::move(val)};
}

std::vector<LabeledImage> load_images(const LabeledIndex& index, std::size_t side, std::size_t threads) {
    std::vector<LabeledImage> out(index.entries.size());
    parallel_for(
        index.entries.size(),
        [&](std::size_t i) {
            const auto& e = index.entries[i];
            out[i] = {resize(load_image(e.path), side), e.class_id};
        },
        threads);
    return out;
}

} // namespace freqnet
