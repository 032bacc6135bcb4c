#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/spectral.hpp"

using namespace noisebench;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

ImageGrid random_image(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    ImageGrid img(w, h);
    for (auto& v : img.pixels())
        v = 255.0 * rng.uniform01();
    return img;
}

// Direct O(N^2) DFT, the independent oracle for the fast transform.
ComplexGrid naive_dft(const ImageGrid& img) {
    const int w = img.width(), h = img.height();
    ComplexGrid out{w, h, std::vector<std::complex<double>>(std::size_t(w) * h)};
    for (int l = 0; l < h; ++l)
        for (int k = 0; k < w; ++k) {
            std::complex<double> acc{0.0, 0.0};
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double angle = -2.0 * kPi * (double(k) * x / w + double(l) * y / h);
                    acc += img.at(x, y) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
            out.at(k, l) = acc;
        }
    return out;
}

double max_abs_diff(const ImageGrid& a, const ImageGrid& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i)
        worst = std::max(worst, std::abs(a.pixels()[i] - b.pixels()[i]));
    return worst;
}

} // namespace

TEST_CASE("fft2d of a 1x1 image is the single value") {
    ImageGrid img(1, 1, 37.5);
    const ComplexGrid spec = fft2d(img);
    CHECK(spec.width == 1);
    CHECK(spec.height == 1);
    CHECK(spec.at(0, 0).real() == doctest::Approx(37.5).epsilon(1e-15));
    CHECK(spec.at(0, 0).imag() == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("DC bin equals the pixel sum") {
    const ImageGrid img = random_image(13, 9, 51);
    const ComplexGrid spec = fft2d(img);
    double sum = 0.0;
    for (double v : img.pixels())
        sum += v;
    CHECK(spec.at(0, 0).real() == doctest::Approx(sum).epsilon(1e-12));
    CHECK(std::abs(spec.at(0, 0).imag()) < 1e-9 * sum);
}

TEST_CASE("fft2d matches the direct DFT oracle on a 7x5 image") {
    const ImageGrid img = random_image(7, 5, 52);
    const ComplexGrid fast = fft2d(img);
    const ComplexGrid slow = naive_dft(img);
    for (std::size_t i = 0; i < fast.data.size(); ++i)
        CHECK(std::abs(fast.data[i] - slow.data[i]) < 1e-9);
}

TEST_CASE("fft2d is linear") {
    const ImageGrid a = random_image(12, 10, 53);
    const ImageGrid b = random_image(12, 10, 54);
    ImageGrid combo(12, 10);
    for (std::size_t i = 0; i < combo.pixel_count(); ++i)
        combo.pixels()[i] = 2.0 * a.pixels()[i] - 0.5 * b.pixels()[i];
    const ComplexGrid fa = fft2d(a), fb = fft2d(b), fc = fft2d(combo);
    for (std::size_t i = 0; i < fc.data.size(); ++i)
        CHECK(std::abs(fc.data[i] - (2.0 * fa.data[i] - 0.5 * fb.data[i])) < 1e-8);
}

TEST_CASE("real input produces a conjugate-symmetric spectrum") {
    const int w = 8, h = 6;
    const ImageGrid img = random_image(w, h, 55);
    const ComplexGrid spec = fft2d(img);
    for (int l = 0; l < h; ++l)
        for (int k = 0; k < w; ++k) {
            const std::complex<double> mirrored = spec.at((w - k) % w, (h - l) % h);
            CHECK(std::abs(spec.at(k, l) - std::conj(mirrored)) < 1e-9);
        }
}

TEST_CASE("roundtrip recovers the image for mixed radix sizes") {
    const int dims[][2] = {{64, 64}, {48, 64}, {7, 5}, {97, 61}};
    for (auto [w, h] : dims) {
        const ImageGrid img = random_image(w, h, 56 + w + h);
        const ImageGrid back = ifft2d(fft2d(img));
        CHECK(back.width() == w);
        CHECK(back.height() == h);
        CHECK(max_abs_diff(img, back) < 1e-9);
    }
}

TEST_CASE("parseval energy conservation") {
    const ImageGrid img = random_image(48, 64, 57);
    const ComplexGrid spec = fft2d(img);
    double pixel_energy = 0.0;
    for (double v : img.pixels())
        pixel_energy += v * v;
    double bin_energy = 0.0;
    for (const auto& z : spec.data)
        bin_energy += std::norm(z);
    bin_energy /= double(img.pixel_count());
    CHECK(std::abs(pixel_energy - bin_energy) < 1e-9 * pixel_energy);
}

TEST_CASE("all-zero spectrum inverts to an all-zero image") {
    ComplexGrid spec{5, 4, std::vector<std::complex<double>>(20)};
    const ImageGrid img = ifft2d(spec);
    for (double v : img.pixels())
        CHECK(v == 0.0);
}

TEST_CASE("ifft2d rejects spectra that are not transforms of real images") {
    ComplexGrid spec{4, 3, std::vector<std::complex<double>>(12)};
    spec.at(1, 0) = {100.0, 0.0}; // missing its conjugate partner at (3, 0)
    CHECK_THROWS_AS(ifft2d(spec), numeric_error);
}

TEST_CASE("identity and zero responses") {
    const ImageGrid img = random_image(31, 17, 58);
    const ImageGrid same = apply_frequency_response(img, [](int, int) { return 1.0; });
    CHECK(max_abs_diff(img, same) < 1e-9);

    const ImageGrid silent = apply_frequency_response(img, [](int, int) { return 0.0; });
    for (double v : silent.pixels())
        CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("DC indicator response preserves a constant image") {
    ImageGrid img(20, 14, 93.25);
    const ImageGrid out = apply_frequency_response(
        img, [](int u, int v) { return (u == 0 && v == 0) ? 1.0 : 0.0; });
    CHECK(max_abs_diff(img, out) < 1e-9);
}

TEST_CASE("DC indicator response replaces any image by its mean") {
    const ImageGrid img = random_image(16, 16, 59);
    double mean = 0.0;
    for (double v : img.pixels())
        mean += v;
    mean /= double(img.pixel_count());
    const ImageGrid out = apply_frequency_response(
        img, [](int u, int v) { return (u == 0 && v == 0) ? 1.0 : 0.0; });
    for (double v : out.pixels())
        CHECK(v == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("centered response coordinates span the documented ranges") {
    // Record every (u, v) the response sees and check the span and count.
    const int w = 6, h = 5;
    ImageGrid img(w, h, 1.0);
    int min_u = 99, max_u = -99, min_v = 99, max_v = -99, calls = 0;
    apply_frequency_response(img, [&](int u, int v) {
        min_u = std::min(min_u, u);
        max_u = std::max(max_u, u);
        min_v = std::min(min_v, v);
        max_v = std::max(max_v, v);
        ++calls;
        return 1.0;
    });
    CHECK(calls == w * h);
    CHECK(min_u == -3);
    CHECK(max_u == 2);
    CHECK(min_v == -2);
    CHECK(max_v == 2);
}
