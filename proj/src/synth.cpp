#include "freqnet/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "freqnet/errors.hpp"

namespace freqnet {

std::vector<GratingClass> parse_grating_classes(std::string_view spec) {
    std::vector<GratingClass> out;
    std::set<std::string> seen;
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        std::string_view item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);

        const auto colon = item.find(':');
        if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size()) {
            throw InvalidArgument("class spec '" + std::string(item) + "' must look like name:frequency");
        }
        GratingClass c{std::string(item.substr(0, colon)), 0};
        const std::string_view num = item.substr(colon + 1);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), c.frequency);
        if (ec != std::errc{} || ptr != num.data() + num.size() || c.frequency == 0) {
            throw InvalidArgument("class '" + c.name + "' needs a positive integer frequency");
        }
        if (!seen.insert(c.name).second) throw InvalidArgument("duplicate class '" + c.name + "'");
        out.push_back(std::move(c));
    }
    if (out.empty()) throw InvalidArgument("no classes given");
    return out;
}

Image make_grating(std::size_t side, std::size_t frequency, Rng& rng) {
    const bool along_rows = rng.uniform() < 0.5;
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double k = 2.0 * std::numbers::pi * static_cast<double>(frequency) / static_cast<double>(side);
    Image img(side, side);
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            const double t = static_cast<double>(along_rows ? r : c);
            const double v = kGratingMean + kGratingAmplitude * std::cos(k * t + phase) +
                             rng.uniform(-kGratingNoise, kGratingNoise);
            img.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

void write_synthetic_dataset(const std::filesystem::path& root, const std::vector<GratingClass>& classes,
                             std::size_t count, std::uint64_t seed, std::size_t side) {
    if (side < 4 || side % 2 != 0) throw InvalidArgument("synthetic image side must be even and >= 4");
    for (const auto& c : classes) {
        if (c.frequency >= side / 2) {
            throw InvalidArgument("class '" + c.name + "' frequency must be below side/2 = " +
                                  std::to_string(side / 2));
        }
    }
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto dir = root / classes[ci].name;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
        Rng rng(derive_seed(seed, ci));
        for (std::size_t i = 0; i < count; ++i) {
            std::ostringstream name;
            name << classes[ci].name << '_' << std::setw(4) << std::setfill('0') << i << ".pgm";
            save_pgm(make_grating(side, classes[ci].frequency, rng), dir / name.str());
        }
    }
}

} // namespace freqnet
