#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "freqnet/image.hpp"

namespace freqnet {

/// Unnormalised 2D DFT of a square block, row-major over (u, v).
struct ComplexSpectrum {
    std::size_t side = 0;
    std::vector<double> re;
    std::vector<double> im;
};

/// Spectrum modulus with the DC term rotated to (side/2, side/2).
struct MagnitudeBlock {
    std::size_t side = 0;
    std::vector<double> values;

    double at(std::size_t u, std::size_t v) const { return values[u * side + v]; }
};

/// In-place forward DFT of arbitrary length. Powers of two use an
/// iterative radix-2 kernel; other lengths go through Bluestein's chirp-z
/// reduction onto a power-of-two convolution.
void fft_inplace(std::span<std::complex<double>> data);

/// F(u,v) = sum_x sum_y f(x,y) exp(-j 2 pi (u x + v y) / N), no scaling.
ComplexSpectrum dft2d(const Image& block);

MagnitudeBlock magnitude_centered(const ComplexSpectrum& spec);

} // namespace freqnet
