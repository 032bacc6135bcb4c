#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "noisebench/image.hpp"

namespace noisebench {

/// Row-major grid of complex spectrum values.
struct ComplexGrid {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> data;

    std::complex<double> at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::complex<double>& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Forward unnormalized 2D DFT, rows then columns. The 1D pass uses an
/// iterative radix-2 FFT for power-of-two lengths and Bluestein's chirp-z
/// for everything else, so arbitrary dimensions transform exactly
/// (no padding).
ComplexGrid fft2d(const ImageGrid& img);

/// Inverse transform with 1/(width*height) normalization, returning real
/// parts. Throws numeric_error when the imaginary residue exceeds
/// 1e-8 * max bin magnitude — the spectrum was not the transform of any
/// real image.
ImageGrid ifft2d(const ComplexGrid& spec);

/// Multiply the spectrum by a real response evaluated in centered
/// coordinates and transform back. H receives integer offsets (u, v) from
/// the DC bin of the centered spectrum (DC itself is (0,0); u spans
/// [-floor(W/2), W-1-floor(W/2)], likewise v), so a radial response is
/// simply H(sqrt(u^2+v^2)). No physical shift is performed; bins are
/// addressed through the centering index map. Output is unclipped.
ImageGrid apply_frequency_response(const ImageGrid& img, const std::function<double(int, int)>& response);

} // namespace noisebench
