#include "noisebench/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey, forward sign convention
// (e^{-2*pi*i*jk/n}).
void fft_pow2(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * kPi / static_cast<double>(len);
        const cplx wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx even = a[i + j];
                const cplx odd = a[i + j + len / 2] * w;
                a[i + j] = even + odd;
                a[i + j + len / 2] = even - odd;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp-z: expresses an arbitrary-length DFT as a power-of-two
// circular convolution. Chirp angles reduce k^2 mod 2n in integers before
// touching floating point, so long transforms keep full precision.
void fft_bluestein(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        const double angle = -kPi * static_cast<double>(sq) / static_cast<double>(n);
        chirp[k] = cplx(std::cos(angle), std::sin(angle));
    }
    std::vector<cplx> u(m, cplx(0.0, 0.0));
    std::vector<cplx> v(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        u[k] = a[k] * chirp[k];
    v[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k)
        v[k] = v[m - k] = std::conj(chirp[k]);
    fft_pow2(u);
    fft_pow2(v);
    for (std::size_t k = 0; k < m; ++k)
        u[k] *= v[k];
    // Inverse of the length-m helper transform via conjugation.
    for (auto& z : u)
        z = std::conj(z);
    fft_pow2(u);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = std::conj(u[k]) * inv_m * chirp[k];
}

void fft_forward(std::vector<cplx>& a) {
    if (a.size() <= 1)
        return;
    if (is_pow2(a.size()))
        fft_pow2(a);
    else
        fft_bluestein(a);
}

void fft_inverse(std::vector<cplx>& a) {
    for (auto& z : a)
        z = std::conj(z);
    fft_forward(a);
    const double inv_n = 1.0 / static_cast<double>(a.size());
    for (auto& z : a)
        z = std::conj(z) * inv_n;
}

template <typename Pass>
void transform_rows_then_cols(std::vector<cplx>& data, int width, int height, Pass pass) {
    std::vector<cplx> line;
    line.resize(static_cast<std::size_t>(width));
    for (int y = 0; y < height; ++y) {
        const std::size_t base = static_cast<std::size_t>(y) * width;
        line.assign(data.begin() + base, data.begin() + base + width);
        pass(line);
        std::copy(line.begin(), line.end(), data.begin() + base);
    }
    line.resize(static_cast<std::size_t>(height));
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y)
            line[static_cast<std::size_t>(y)] = data[static_cast<std::size_t>(y) * width + x];
        pass(line);
        for (int y = 0; y < height; ++y)
            data[static_cast<std::size_t>(y) * width + x] = line[static_cast<std::size_t>(y)];
    }
}

void check_grid(const ComplexGrid& spec) {
    if (spec.width < 1 || spec.height < 1)
        throw parameter_error("spectrum dimensions must be at least 1x1, got " + std::to_string(spec.width) + "x" +
                              std::to_string(spec.height));
    const std::size_t expected = static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);
    if (spec.data.size() != expected)
        throw parameter_error("spectrum holds " + std::to_string(spec.data.size()) + " bins, expected " +
                              std::to_string(expected));
}

} // namespace

ComplexGrid fft2d(const ImageGrid& img) {
    ComplexGrid out;
    out.width = img.width();
    out.height = img.height();
    out.data.reserve(img.pixel_count());
    for (double v : img.pixels())
        out.data.emplace_back(v, 0.0);
    transform_rows_then_cols(out.data, out.width, out.height, [](std::vector<cplx>& line) { fft_forward(line); });
    return out;
}

namespace {

// scale_floor keeps the residue limit meaningful when the spectrum itself
// is numerical dust (e.g. a response that nulls every significant bin):
// the limit is taken relative to the larger of the result's own magnitude
// and the caller's working scale.
ImageGrid inverse_to_real(std::vector<cplx>&& work, int width, int height, double scale_floor) {
    transform_rows_then_cols(work, width, height, [](std::vector<cplx>& line) { fft_inverse(line); });
    double max_mag = scale_floor;
    double max_imag = 0.0;
    for (const cplx& z : work) {
        max_mag = std::max(max_mag, std::abs(z));
        max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    if (max_imag > 1e-8 * max_mag)
        throw numeric_error("inverse transform left imaginary residue " + std::to_string(max_imag) +
                            " (limit " + std::to_string(1e-8 * max_mag) + "); spectrum is not that of a real image");
    std::vector<double> pixels;
    pixels.reserve(work.size());
    for (const cplx& z : work)
        pixels.push_back(z.real());
    return ImageGrid(width, height, std::move(pixels));
}

} // namespace

ImageGrid ifft2d(const ComplexGrid& spec) {
    check_grid(spec);
    return inverse_to_real(std::vector<cplx>(spec.data), spec.width, spec.height, 0.0);
}

ImageGrid apply_frequency_response(const ImageGrid& img, const std::function<double(int, int)>& response) {
    ComplexGrid spec = fft2d(img);
    const int w = spec.width;
    const int h = spec.height;
    const int cx = w / 2;
    const int cy = h / 2;
    for (int l = 0; l < h; ++l) {
        const int v = (l + cy) % h - cy;
        for (int k = 0; k < w; ++k) {
            const int u = (k + cx) % w - cx;
            spec.at(k, l) *= response(u, v);
        }
    }
    double input_scale = 0.0;
    for (double p : img.pixels())
        input_scale = std::max(input_scale, std::abs(p));
    return inverse_to_real(std::move(spec.data), w, h, input_scale);
}

} // namespace noisebench
