#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "noisebench/kernels.hpp"
#include "noisebench/rng.hpp"

using namespace noisebench;
using kernels::Backend;

namespace {

std::vector<double> random_buffer(std::size_t n, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out)
        v = lo + (hi - lo) * rng.uniform01();
    return out;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Ragged lengths around the 4-lane boundaries plus a long one.
const std::size_t kLens[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 257, 1031};

} // namespace

TEST_CASE("scalar elementwise kernels match naive oracles") {
    const Backend& s = kernels::scalar_backend();
    const auto a = random_buffer(257, 21, -300.0, 600.0);
    const auto b = random_buffer(257, 22, -5.0, 5.0);
    std::vector<double> got(a.size());

    s.clamp255(a.data(), got.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(got[i] == std::min(255.0, std::max(0.0, a[i])));

    s.add(a.data(), b.data(), got.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(got[i] == a[i] + b[i]);

    s.mul(a.data(), b.data(), got.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(got[i] == a[i] * b[i]);

    s.scale(a.data(), 1.25, got.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(got[i] == a[i] * 1.25);

    double naive_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        naive_sq += (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(s.sum_sq_diff(a.data(), b.data(), a.size()) == doctest::Approx(naive_sq).epsilon(1e-13));

    double naive_sum = 0.0;
    for (double v : a)
        naive_sum += v;
    CHECK(s.sum(a.data(), a.size()) == doctest::Approx(naive_sum).epsilon(1e-13));
}

TEST_CASE("scalar windowed kernels match naive oracles") {
    const Backend& s = kernels::scalar_backend();
    const int taps = 5;
    const std::size_t n = 41;
    const auto padded = random_buffer(n + taps - 1, 23, 0.0, 255.0);
    std::vector<double> got(n);

    s.box_h(padded.data(), taps, got.data(), n);
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += padded[x + t];
        CHECK(got[x] == doctest::Approx(acc).epsilon(1e-14));
    }

    const auto k = random_buffer(taps, 24, 0.0, 1.0);
    s.conv_h(padded.data(), k.data(), taps, got.data(), n);
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += padded[x + t] * k[t];
        CHECK(got[x] == doctest::Approx(acc).epsilon(1e-14));
    }

    const std::size_t width = 17, rows = 6;
    const auto plane = random_buffer(width * (rows + taps - 1), 25, 0.0, 255.0);
    std::vector<double> vert(width * rows);
    s.box_v(plane.data(), taps, width, rows, vert.data());
    for (std::size_t y = 0; y < rows; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += plane[(y + t) * width + x];
            CHECK(vert[y * width + x] == doctest::Approx(acc).epsilon(1e-14));
        }

    s.conv_v(plane.data(), k.data(), taps, width, rows, vert.data());
    for (std::size_t y = 0; y < rows; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += plane[(y + t) * width + x] * k[t];
            CHECK(vert[y * width + x] == doctest::Approx(acc).epsilon(1e-14));
        }
}

TEST_CASE("scalar median3_row picks the median of nine") {
    const Backend& s = kernels::scalar_backend();
    const std::size_t n = 33;
    const auto r0 = random_buffer(n + 2, 26, 0.0, 255.0);
    const auto r1 = random_buffer(n + 2, 27, 0.0, 255.0);
    const auto r2 = random_buffer(n + 2, 28, 0.0, 255.0);
    std::vector<double> got(n);
    s.median3_row(r0.data(), r1.data(), r2.data(), got.data(), n);
    for (std::size_t x = 0; x < n; ++x) {
        double window[9] = {r0[x], r0[x + 1], r0[x + 2], r1[x], r1[x + 1],
                            r1[x + 2], r2[x], r2[x + 1], r2[x + 2]};
        std::sort(window, window + 9);
        CHECK(got[x] == window[4]);
    }
}

TEST_CASE("scalar laplacian3_row applies the 4-neighbour stencil") {
    const Backend& s = kernels::scalar_backend();
    const std::size_t n = 33;
    const auto r0 = random_buffer(n + 2, 29, 0.0, 255.0);
    const auto r1 = random_buffer(n + 2, 30, 0.0, 255.0);
    const auto r2 = random_buffer(n + 2, 31, 0.0, 255.0);
    std::vector<double> got(n);
    s.laplacian3_row(r0.data(), r1.data(), r2.data(), got.data(), n);
    for (std::size_t x = 0; x < n; ++x) {
        const double expect =
            r0[x + 1] + r2[x + 1] + r1[x] + r1[x + 2] - 4.0 * r1[x + 1];
        CHECK(got[x] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("scalar wiener kernels match their formulas") {
    const Backend& s = kernels::scalar_backend();
    const std::size_t n = 21;
    const auto m = random_buffer(n, 32, 0.0, 255.0);
    auto q = random_buffer(n, 33, 0.0, 65025.0);
    // Force one q below m^2 so the max(0, .) clamp is exercised.
    q[3] = m[3] * m[3] * 0.5;
    std::vector<double> v(n);
    s.local_variance(m.data(), q.data(), v.data(), n);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(v[i] == std::max(0.0, q[i] - m[i] * m[i]));

    const auto x = random_buffer(n, 34, 0.0, 255.0);
    const double nu = 120.0;
    std::vector<double> out(n);
    s.wiener_apply(x.data(), m.data(), v.data(), nu, out.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gain = std::max(0.0, v[i] - nu) / std::max(v[i], nu);
        CHECK(out[i] == m[i] + gain * (x[i] - m[i]));
    }

    // nu = 0 with v = 0 must produce gain 0, not NaN.
    std::vector<double> zero(n, 0.0);
    s.wiener_apply(x.data(), m.data(), zero.data(), 0.0, out.data(), n);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(out[i] == m[i]);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
    const Backend* a2 = kernels::avx2_backend();
    if (a2 == nullptr)
        return; // host has no AVX2; dispatch falls back to scalar
    const Backend& s = kernels::scalar_backend();

    for (std::size_t n : kLens) {
        const auto x = random_buffer(n, 100 + n, -400.0, 700.0);
        const auto y = random_buffer(n, 200 + n, -3.0, 3.0);
        std::vector<double> rs(n), rv(n);

        s.clamp255(x.data(), rs.data(), n);
        a2->clamp255(x.data(), rv.data(), n);
        CHECK(bit_equal(rs, rv));

        s.add(x.data(), y.data(), rs.data(), n);
        a2->add(x.data(), y.data(), rv.data(), n);
        CHECK(bit_equal(rs, rv));

        s.mul(x.data(), y.data(), rs.data(), n);
        a2->mul(x.data(), y.data(), rv.data(), n);
        CHECK(bit_equal(rs, rv));

        s.scale(x.data(), -0.37, rs.data(), n);
        a2->scale(x.data(), -0.37, rv.data(), n);
        CHECK(bit_equal(rs, rv));

        CHECK(s.sum(x.data(), n) == a2->sum(x.data(), n));
        CHECK(s.sum_sq_diff(x.data(), y.data(), n) == a2->sum_sq_diff(x.data(), y.data(), n));
    }
}

TEST_CASE("avx2 windowed kernels are bit-identical to scalar") {
    const Backend* a2 = kernels::avx2_backend();
    if (a2 == nullptr)
        return;
    const Backend& s = kernels::scalar_backend();

    for (int taps : {1, 3, 5, 7, 13}) {
        for (std::size_t n : kLens) {
            const auto padded = random_buffer(n + taps - 1, 300 + n + taps, 0.0, 255.0);
            const auto k = random_buffer(taps, 400 + taps, -0.5, 1.0);
            std::vector<double> rs(n), rv(n);

            s.box_h(padded.data(), taps, rs.data(), n);
            a2->box_h(padded.data(), taps, rv.data(), n);
            CHECK(bit_equal(rs, rv));

            s.conv_h(padded.data(), k.data(), taps, rs.data(), n);
            a2->conv_h(padded.data(), k.data(), taps, rv.data(), n);
            CHECK(bit_equal(rs, rv));

            const std::size_t rows = 5;
            const auto plane = random_buffer(n * (rows + taps - 1), 500 + n + taps, 0.0, 255.0);
            std::vector<double> ps(n * rows), pv(n * rows);
            s.box_v(plane.data(), taps, n, rows, ps.data());
            a2->box_v(plane.data(), taps, n, rows, pv.data());
            CHECK(bit_equal(ps, pv));

            s.conv_v(plane.data(), k.data(), taps, n, rows, ps.data());
            a2->conv_v(plane.data(), k.data(), taps, n, rows, pv.data());
            CHECK(bit_equal(ps, pv));
        }
    }
}

TEST_CASE("avx2 stencil and wiener kernels are bit-identical to scalar") {
    const Backend* a2 = kernels::avx2_backend();
    if (a2 == nullptr)
        return;
    const Backend& s = kernels::scalar_backend();

    for (std::size_t n : kLens) {
        const auto r0 = random_buffer(n + 2, 600 + n, 0.0, 255.0);
        const auto r1 = random_buffer(n + 2, 700 + n, 0.0, 255.0);
        const auto r2 = random_buffer(n + 2, 800 + n, 0.0, 255.0);
        std::vector<double> rs(n), rv(n);

        s.median3_row(r0.data(), r1.data(), r2.data(), rs.data(), n);
        a2->median3_row(r0.data(), r1.data(), r2.data(), rv.data(), n);
        CHECK(bit_equal(rs, rv));

        s.laplacian3_row(r0.data(), r1.data(), r2.data(), rs.data(), n);
        a2->laplacian3_row(r0.data(), r1.data(), r2.data(), rv.data(), n);
        CHECK(bit_equal(rs, rv));

        const auto m = random_buffer(n, 900 + n, 0.0, 255.0);
        const auto q = random_buffer(n, 1000 + n, 0.0, 65025.0);
        std::vector<double> vs(n), vv(n);
        s.local_variance(m.data(), q.data(), vs.data(), n);
        a2->local_variance(m.data(), q.data(), vv.data(), n);
        CHECK(bit_equal(vs, vv));

        const auto x = random_buffer(n, 1100 + n, 0.0, 255.0);
        for (double nu : {0.0, 55.5}) {
            s.wiener_apply(x.data(), m.data(), vs.data(), nu, rs.data(), n);
            a2->wiener_apply(x.data(), m.data(), vv.data(), nu, rv.data(), n);
            CHECK(bit_equal(rs, rv));
        }
        // All-zero variance with nu = 0 exercises the 0/0 guard in both.
        std::vector<double> zero(n, 0.0);
        s.wiener_apply(x.data(), m.data(), zero.data(), 0.0, rs.data(), n);
        a2->wiener_apply(x.data(), m.data(), zero.data(), 0.0, rv.data(), n);
        CHECK(bit_equal(rs, rv));
    }
}

TEST_CASE("min/max tie convention returns the second operand on equality") {
    // clamp255(-0.0) = min(255, max(-0.0, 0.0)); with the second-operand tie
    // rule max(-0.0, 0.0) = 0.0, so the sign bit must be cleared.
    const Backend& s = kernels::scalar_backend();
    const double src = -0.0;
    double dst = -1.0;
    s.clamp255(&src, &dst, 1);
    CHECK(std::signbit(dst) == false);
    const Backend* a2 = kernels::avx2_backend();
    if (a2 != nullptr) {
        double dv = -1.0;
        a2->clamp255(&src, &dv, 1);
        CHECK(std::memcmp(&dst, &dv, sizeof dst) == 0);
    }
}

TEST_CASE("active_backend returns a usable backend") {
    const Backend& b = kernels::active_backend();
    const double a[3] = {1.0, 2.0, 3.0};
    CHECK(b.sum(a, 3) == 6.0);
    CHECK((std::string_view(b.name) == "scalar" || std::string_view(b.name) == "avx2"));
}
