#include "noisebench/kernels.hpp"

namespace noisebench::kernels {
namespace {

// Tie convention matches the x86 minpd/maxpd instructions: the second
// operand wins on equality. Inputs are NaN-free by module invariant.
inline double kmin(double a, double b) { return a < b ? a : b; }
inline double kmax(double a, double b) { return a > b ? a : b; }

void clamp255(const double* src, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = kmin(kmax(src[i], 0.0), 255.0);
}

void add(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] + b[i];
}

void mul(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] * b[i];
}

void scale(const double* a, double s, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] * s;
}

double sum(const double* a, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        acc[0] += a[i];
        acc[1] += a[i + 1];
        acc[2] += a[i + 2];
        acc[3] += a[i + 3];
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (std::size_t i = n4; i < n; ++i)
        s += a[i];
    return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        acc[0] += d0 * d0;
        acc[1] += d1 * d1;
        acc[2] += d2 * d2;
        acc[3] += d3 * d3;
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void box_h(const double* padded, int taps, double* dst, std::size_t n) {
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += padded[x + static_cast<std::size_t>(t)];
        dst[x] = acc;
    }
}

void box_v(const double* padded, int taps, std::size_t width, std::size_t rows, double* dst) {
    for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += padded[(y + static_cast<std::size_t>(t)) * width + x];
            dst[y * width + x] = acc;
        }
    }
}

void conv_h(const double* padded, const double* k, int taps, double* dst, std::size_t n) {
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += k[t] * padded[x + static_cast<std::size_t>(t)];
        dst[x] = acc;
    }
}

void conv_v(const double* padded, const double* k, int taps, std::size_t width, std::size_t rows, double* dst) {
    for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += k[t] * padded[(y + static_cast<std::size_t>(t)) * width + x];
            dst[y * width + x] = acc;
        }
    }
}

// min/med/max of a 3x3 window via the classic 19-comparator selection
// network: sort each row triple, then reduce max-of-mins, med-of-meds and
// min-of-maxes.
inline void sort3(double& a, double& b, double& c) {
    const double ab_lo = kmin(a, b), ab_hi = kmax(a, b);
    const double bc_lo = kmin(ab_hi, c), bc_hi = kmax(ab_hi, c);
    const double lo = kmin(ab_lo, bc_lo), mid = kmax(ab_lo, bc_lo);
    a = lo;
    b = mid;
    c = bc_hi;
}

inline double med3(double a, double b, double c) {
    return kmax(kmin(a, b), kmin(kmax(a, b), c));
}

void median3_row(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n) {
    for (std::size_t x = 0; x < n; ++x) {
        double a0 = r0[x], a1 = r0[x + 1], a2 = r0[x + 2];
        double b0 = r1[x], b1 = r1[x + 1], b2 = r1[x + 2];
        double c0 = r2[x], c1 = r2[x + 1], c2 = r2[x + 2];
        sort3(a0, a1, a2);
        sort3(b0, b1, b2);
        sort3(c0, c1, c2);
        const double lo = kmax(kmax(a0, b0), c0);
        const double mid = med3(a1, b1, c1);
        const double hi = kmin(kmin(a2, b2), c2);
        dst[x] = med3(lo, mid, hi);
    }
}

void laplacian3_row(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n) {
    for (std::size_t x = 0; x < n; ++x)
        dst[x] = ((r0[x + 1] + r2[x + 1]) + (r1[x] + r1[x + 2])) - 4.0 * r1[x + 1];
}

void local_variance(const double* m, const double* q, double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        v[i] = kmax(q[i] - m[i] * m[i], 0.0);
}

void wiener_apply(const double* x, const double* m, const double* v, double nu, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double den = kmax(v[i], nu);
        const double gain = den > 0.0 ? kmax(v[i] - nu, 0.0) / den : 0.0;
        dst[i] = m[i] + gain * (x[i] - m[i]);
    }
}

constexpr Backend kScalarBackend = {
    "scalar",
    clamp255,
    add,
    mul,
    scale,
    sum,
    sum_sq_diff,
    box_h,
    box_v,
    conv_h,
    conv_v,
    median3_row,
    laplacian3_row,
    local_variance,
    wiener_apply,
};

} // namespace

const Backend& scalar_backend() { return kScalarBackend; }

} // namespace noisebench::kernels
