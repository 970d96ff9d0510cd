#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "freqnet/image.hpp"
#include "freqnet/random.hpp"

namespace freqnet {

struct GratingClass {
    std::string name;
    std::size_t frequency = 0; // cycles per image side
};

inline constexpr double kGratingMean = 0.5;
inline constexpr double kGratingAmplitude = 0.35;
inline constexpr double kGratingNoise = 0.1;

/// Parses "low:3,high:9" into grating classes.
std::vector<GratingClass> parse_grating_classes(std::string_view spec);

/// Axis-aligned cosine grating with `frequency` cycles across the image,
/// random orientation (rows or columns) and phase, plus uniform noise in
/// [-kGratingNoise, kGratingNoise].
Image make_grating(std::size_t side, std::size_t frequency, Rng& rng);

/// Writes `count` PGM images per class to <root>/<name>/<name>_NNNN.pgm.
void write_synthetic_dataset(const std::filesystem::path& root, const std::vector<GratingClass>& classes,
                             std::size_t count, std::uint64_t seed, std::size_t side = 128);

} // namespace freqnet
