#include "freqnet/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "freqnet/errors.hpp"

namespace freqnet {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::span<cd> a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles are evaluated directly rather than by recurrence so the
    // error stays at a few ulps independent of n.
    std::vector<cd> tw(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cd t = a[i + k + half] * tw[k * step];
                a[i + k + half] = a[i + k] - t;
                a[i + k] += t;
            }
        }
    }
}

void fft_bluestein(std::span<cd> a) {
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // chirp[k] = exp(-j pi k^2 / n); k^2 is reduced mod 2n to keep the
    // argument small.
    std::vector<cd> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = (k * k) % (2 * n);
        const double ang = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<cd> x(m, 0.0);
    std::vector<cd> kernel(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    kernel[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) kernel[k] = kernel[m - k] = std::conj(chirp[k]);

    fft_radix2(x, false);
    fft_radix2(kernel, false);
    for (std::size_t i = 0; i < m; ++i) x[i] *= kernel[i];
    fft_radix2(x, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * scale * chirp[k];
}

} // namespace

void fft_inplace(std::span<cd> data) {
    if (data.size() <= 1) return;
    if (is_pow2(data.size())) {
        fft_radix2(data, false);
    } else {
        fft_bluestein(data);
    }
}

ComplexSpectrum dft2d(const Image& block) {
    if (!block.square()) {
        throw InvalidArgument("dft2d needs a square block, got " + std::to_string(block.height) + "x" +
                              std::to_string(block.width));
    }
    if (block.width < 2) throw InvalidArgument("dft2d needs side >= 2");
    const std::size_t n = block.width;

    std::vector<cd> grid(n * n);
    for (std::size_t i = 0; i < n * n; ++i) grid[i] = block.data[i];

    // Transform along y (contiguous rows), then along x via a column buffer.
    for (std::size_t x = 0; x < n; ++x) fft_inplace(std::span(grid).subspan(x * n, n));
    std::vector<cd> column(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) column[u] = grid[u * n + v];
        fft_inplace(column);
        for (std::size_t u = 0; u < n; ++u) grid[u * n + v] = column[u];
    }

    ComplexSpectrum spec;
    spec.side = n;
    spec.re.resize(n * n);
    spec.im.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        spec.re[i] = grid[i].real();
        spec.im[i] = grid[i].imag();
    }
    return spec;
}

MagnitudeBlock magnitude_centered(const ComplexSpectrum& spec) {
    const std::size_t n = spec.side;
    const std::size_t shift = n / 2;
    MagnitudeBlock mag;
    mag.side = n;
    mag.values.resize(n * n);
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t cu = (u + shift) % n;
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t cv = (v + shift) % n;
            mag.values[cu * n + cv] = std::hypot(spec.re[u * n + v], spec.im[u * n + v]);
        }
    }
    return mag;
}

} // namespace freqnet
