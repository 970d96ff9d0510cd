#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace freqnet {

/// Single-channel image with row-major samples in [0, 1].
///
/// Pixel (row, col) lives at data[row * width + col]. The frequency path
/// treats the row index as x and the column index as y.
struct Image {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> data;

    Image() = default;
    Image(std::size_t h, std::size_t w, double fill = 0.0)
        : height(h), width(w), data(h * w, fill) {}
    Image(std::size_t h, std::size_t w, std::vector<double> values);

    double& at(std::size_t row, std::size_t col) { return data[row * width + col]; }
    double at(std::size_t row, std::size_t col) const { return data[row * width + col]; }

    bool square() const { return height == width; }
    std::size_t size() const { return data.size(); }

    friend bool operator==(const Image&, const Image&) = default;
};

/// Decodes a PNG (8/16-bit gray, gray+alpha, RGB, RGBA, palette) or a
/// PGM (P2/P5) into grayscale. Color uses BT.601 luma; alpha is ignored.
/// Throws IoError when the file cannot be read and DecodeError otherwise.
Image load_image(const std::filesystem::path& path);

/// Bilinear resize to side x side with half-pixel sample centers and edge
/// clamping. side must be even and >= 2.
Image resize(const Image& img, std::size_t side);

/// Writes an 8-bit binary PGM (P5). Values are rounded to the nearest level.
void save_pgm(const Image& img, const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG.
void save_png(const Image& img, const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG from interleaved RGB bytes.
void save_png_rgb(std::size_t height, std::size_t width, const std::vector<unsigned char>& rgb,
                  const std::filesystem::path& path);

} // namespace freqnet
