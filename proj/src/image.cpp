#include "freqnet/image.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "freqnet/errors.hpp"

namespace freqnet {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open '" + path.string() + "'");
    return f;
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return buf.str();
}

unsigned char to_byte(double v) {
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Minimal PGM parser: P2 (ASCII) and P5 (binary), maxval up to 65535.
Image decode_pgm(const std::string& bytes, const std::filesystem::path& path) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> DecodeError {
        return DecodeError("'" + path.string() + "': " + why);
    };
    auto skip_ws = [&] {
        while (pos < bytes.size()) {
            char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&]() -> std::size_t {
        skip_ws();
        if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
            throw fail("malformed PGM header");
        std::size_t v = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + static_cast<std::size_t>(bytes[pos] - '0');
            if (v > (std::size_t{1} << 31)) throw fail("PGM header value too large");
            ++pos;
        }
        return v;
    };

    const bool binary = bytes[1] == '5';
    pos = 2;
    const std::size_t width = read_uint();
    const std::size_t height = read_uint();
    const std::size_t maxval = read_uint();
    if (width == 0 || height == 0) throw fail("zero image dimension");
    if (maxval == 0 || maxval > 65535) throw fail("invalid PGM maxval");

    Image img(height, width);
    const double scale = 1.0 / static_cast<double>(maxval);
    const std::size_t n = width * height;
    if (binary) {
        ++pos; // single whitespace byte after maxval
        const std::size_t bps = maxval < 256 ? 1 : 2;
        if (bytes.size() < pos + n * bps) throw fail("truncated PGM raster");
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t v;
            if (bps == 1) {
                v = static_cast<unsigned char>(bytes[pos + i]);
            } else {
                v = (static_cast<std::size_t>(static_cast<unsigned char>(bytes[pos + 2 * i])) << 8) |
                    static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
            }
            if (v > maxval) throw fail("sample exceeds maxval");
            img.data[i] = static_cast<double>(v) * scale;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t v = read_uint();
            if (v > maxval) throw fail("sample exceeds maxval");
            img.data[i] = static_cast<double>(v) * scale;
        }
    }
    return img;
}

struct PngRaster {
    std::vector<unsigned char> pixels;
    std::size_t stride = 0;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;
};

// Runs inside the setjmp-protected region of decode_png; all state that
// outlives a longjmp is reached through `out`.
void read_png_raster(png_structp png, png_infop info, std::FILE* file, PngRaster& out) {
    png_init_io(png, file);
    png_read_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    out.channels = png_get_channels(png, info);
    out.stride = png_get_rowbytes(png, info);
    out.pixels.resize(out.stride * out.height);
    std::vector<png_bytep> rows(out.height);
    for (png_uint_32 r = 0; r < out.height; ++r) rows[r] = out.pixels.data() + r * out.stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
}

Image decode_png(const std::filesystem::path& path) {
    FilePtr file = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DecodeError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("libpng initialisation failed");
    }

    auto raster = std::make_unique<PngRaster>();
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("'" + path.string() + "': corrupt PNG data");
    }
    read_png_raster(png, info, file.get(), *raster);
    png_destroy_read_struct(&png, &info, nullptr);

    if (raster->channels != 1 && raster->channels != 3) {
        throw DecodeError("'" + path.string() + "': unsupported PNG channel layout");
    }

    Image img(raster->height, raster->width);
    for (std::size_t r = 0; r < raster->height; ++r) {
        const unsigned char* row = raster->pixels.data() + r * raster->stride;
        for (std::size_t c = 0; c < raster->width; ++c) {
            double v;
            if (raster->channels == 1) {
                v = row[c];
            } else {
                const unsigned char* p = row + 3 * c;
                v = kLumaR * p[0] + kLumaG * p[1] + kLumaB * p[2];
            }
            img.at(r, c) = std::clamp(v / 255.0, 0.0, 1.0);
        }
    }
    return img;
}

void write_png(std::size_t height, std::size_t width, int color_type, int channels,
               const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
    FilePtr file = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialisation failed");
    }
    std::vector<png_const_bytep> rows(height);
    for (std::size_t r = 0; r < height; ++r) rows[r] = bytes.data() + r * width * channels;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing PNG '" + path.string() + "'");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, const_cast<png_bytepp>(rows.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

Image::Image(std::size_t h, std::size_t w, std::vector<double> values)
    : height(h), width(w), data(std::move(values)) {
    if (data.size() != h * w) {
        throw ShapeMismatch("image data length " + std::to_string(data.size()) +
                            " does not match " + std::to_string(h) + "x" + std::to_string(w));
    }
}

Image load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("no such file '" + path.string() + "'");
    }
    static constexpr std::array<unsigned char, 8> kPngMagic = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

    std::string bytes = read_all(path);
    if (bytes.size() >= kPngMagic.size() &&
        std::equal(kPngMagic.begin(), kPngMagic.end(), bytes.begin(),
                   [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
        return decode_png(path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2')) {
        return decode_pgm(bytes, path);
    }
    throw DecodeError("'" + path.string() + "': unsupported image format");
}

Image resize(const Image& img, std::size_t side) {
    if (side < 2 || side % 2 != 0) {
        throw InvalidArgument("resize target side must be even and >= 2, got " + std::to_string(side));
    }
    if (img.height == 0 || img.width == 0) throw InvalidArgument("cannot resize an empty image");
    if (img.height == side && img.width == side) return img;

    const double sy = static_cast<double>(img.height) / static_cast<double>(side);
    const double sx = static_cast<double>(img.width) / static_cast<double>(side);

    struct Tap {
        std::size_t lo, hi;
        double frac;
    };
    auto taps = [](std::size_t out, double scale, std::size_t in_len) {
        std::vector<Tap> t(out);
        const double max_coord = static_cast<double>(in_len - 1);
        for (std::size_t i = 0; i < out; ++i) {
            double src = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, max_coord);
            auto lo = static_cast<std::size_t>(std::floor(src));
            std::size_t hi = std::min(lo + 1, in_len - 1);
            t[i] = {lo, hi, src - static_cast<double>(lo)};
        }
        return t;
    };
    const auto row_taps = taps(side, sy, img.height);
    const auto col_taps = taps(side, sx, img.width);

    Image out(side, side);
    for (std::size_t r = 0; r < side; ++r) {
        const Tap& ty = row_taps[r];
        for (std::size_t c = 0; c < side; ++c) {
            const Tap& tx = col_taps[c];
            const double top = img.at(ty.lo, tx.lo) * (1.0 - tx.frac) + img.at(ty.lo, tx.hi) * tx.frac;
            const double bot = img.at(ty.hi, tx.lo) * (1.0 - tx.frac) + img.at(ty.hi, tx.hi) * tx.frac;
            out.at(r, c) = std::clamp(top * (1.0 - ty.frac) + bot * ty.frac, 0.0, 1.0);
        }
    }
    return out;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<char> raster(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) raster[i] = static_cast<char>(to_byte(img.data[i]));
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void save_png(const Image& img, const std::filesystem::path& path) {
    std::vector<unsigned char> bytes(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.data[i]);
    write_png(img.height, img.width, PNG_COLOR_TYPE_GRAY, 1, bytes, path);
}

void save_png_rgb(std::size_t height, std::size_t width, const std::vector<unsigned char>& rgb,
                  const std::filesystem::path& path) {
    if (rgb.size() != height * width * 3) throw ShapeMismatch("RGB buffer size mismatch");
    write_png(height, width, PNG_COLOR_TYPE_RGB, 3, rgb, path);
}

} // namespace freqnet
