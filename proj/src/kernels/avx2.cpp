// AVX2 variants of the inner kernels. Compiled with -mavx2 only (no -mfma):
// every kernel must stay bit-identical to its scalar reference, so fused
// multiply-adds are off limits and reductions keep the scalar lane pattern.

#include "noisebench/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace noisebench::kernels {
namespace {

inline double reduce_lanes(__m256d acc) {
    // (l0 + l1) + (l2 + l3), matching the scalar four-accumulator pattern.
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const double l0 = _mm_cvtsd_f64(lo);
    const double l1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    const double l2 = _mm_cvtsd_f64(hi);
    const double l3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
    return (l0 + l1) + (l2 + l3);
}

void clamp255(const double* src, double* dst, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d top = _mm256_set1_pd(255.0);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d v = _mm256_loadu_pd(src + i);
        _mm256_storeu_pd(dst + i, _mm256_min_pd(_mm256_max_pd(v, zero), top));
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double lo = src[i] > 0.0 ? src[i] : 0.0;
        dst[i] = lo < 255.0 ? lo : 255.0;
    }
}

void add(const double* a, const double* b, double* dst, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (std::size_t i = n4; i < n; ++i)
        dst[i] = a[i] + b[i];
}

void mul(const double* a, const double* b, double* dst, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (std::size_t i = n4; i < n; ++i)
        dst[i] = a[i] * b[i];
}

void scale(const double* a, double s, double* dst, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    for (std::size_t i = n4; i < n; ++i)
        dst[i] = a[i] * s;
}

double sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = reduce_lanes(acc);
    for (std::size_t i = n4; i < n; ++i)
        s += a[i];
    return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = reduce_lanes(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void box_h(const double* padded, int taps, double* dst, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t x = 0; x < n4; x += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int t = 0; t < taps; ++t)
            acc = _mm256_add_pd(acc, _mm256_loadu_pd(padded + x + static_cast<std::size_t>(t)));
        _mm256_storeu_pd(dst + x, acc);
    }
    for (std::size_t x = n4; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += padded[x + static_cast<std::size_t>(t)];
        dst[x] = acc;
    }
}

void box_v(const double* padded, int taps, std::size_t width, std::size_t rows, double* dst) {
    const std::size_t w4 = width & ~std::size_t{3};
    for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < w4; x += 4) {
            __m256d acc = _mm256_setzero_pd();
            for (int t = 0; t < taps; ++t)
                acc = _mm256_add_pd(acc, _mm256_loadu_pd(padded + (y + static_cast<std::size_t>(t)) * width + x));
            _mm256_storeu_pd(dst + y * width + x, acc);
        }
        for (std::size_t x = w4; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += padded[(y + static_cast<std::size_t>(t)) * width + x];
            dst[y * width + x] = acc;
        }
    }
}

void conv_h(const double* padded, const double* k, int taps, double* dst, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t x = 0; x < n4; x += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int t = 0; t < taps; ++t) {
            const __m256d kv = _mm256_set1_pd(k[t]);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(kv, _mm256_loadu_pd(padded + x + static_cast<std::size_t>(t))));
        }
        _mm256_storeu_pd(dst + x, acc);
    }
    for (std::size_t x = n4; x < n; ++x) {
        double acc = 0.0;
        for (int t = 0; t < taps; ++t)
            acc += k[t] * padded[x + static_cast<std::size_t>(t)];
        dst[x] = acc;
    }
}

void conv_v(const double* padded, const double* k, int taps, std::size_t width, std::size_t rows, double* dst) {
    const std::size_t w4 = width & ~std::size_t{3};
    for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < w4; x += 4) {
            __m256d acc = _mm256_setzero_pd();
            for (int t = 0; t < taps; ++t) {
                const __m256d kv = _mm256_set1_pd(k[t]);
                acc = _mm256_add_pd(acc,
                                    _mm256_mul_pd(kv, _mm256_loadu_pd(padded + (y + static_cast<std::size_t>(t)) * width + x)));
            }
            _mm256_storeu_pd(dst + y * width + x, acc);
        }
        for (std::size_t x = w4; x < width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < taps; ++t)
                acc += k[t] * padded[(y + static_cast<std::size_t>(t)) * width + x];
            dst[y * width + x] = acc;
        }
    }
}

inline void sort3v(__m256d& a, __m256d& b, __m256d& c) {
    const __m256d ab_lo = _mm256_min_pd(a, b), ab_hi = _mm256_max_pd(a, b);
    const __m256d bc_lo = _mm256_min_pd(ab_hi, c), bc_hi = _mm256_max_pd(ab_hi, c);
    const __m256d lo = _mm256_min_pd(ab_lo, bc_lo), mid = _mm256_max_pd(ab_lo, bc_lo);
    a = lo;
    b = mid;
    c = bc_hi;
}

inline __m256d med3v(__m256d a, __m256d b, __m256d c) {
    return _mm256_max_pd(_mm256_min_pd(a, b), _mm256_min_pd(_mm256_max_pd(a, b), c));
}

inline double kmin_s(double a, double b) { return a < b ? a : b; }
inline double kmax_s(double a, double b) { return a > b ? a : b; }

inline void sort3s(double& a, double& b, double& c) {
    const double ab_lo = kmin_s(a, b), ab_hi = kmax_s(a, b);
    const double bc_lo = kmin_s(ab_hi, c), bc_hi = kmax_s(ab_hi, c);
    const double lo = kmin_s(ab_lo, bc_lo), mid = kmax_s(ab_lo, bc_lo);
    a = lo;
    b = mid;
    c = bc_hi;
}

inline double med3s(double a, double b, double c) {
    return kmax_s(kmin_s(a, b), kmin_s(kmax_s(a, b), c));
}

void median3_row(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t x = 0; x < n4; x += 4) {
        __m256d a0 = _mm256_loadu_pd(r0 + x), a1 = _mm256_loadu_pd(r0 + x + 1), a2 = _mm256_loadu_pd(r0 + x + 2);
        __m256d b0 = _mm256_loadu_pd(r1 + x), b1 = _mm256_loadu_pd(r1 + x + 1), b2 = _mm256_loadu_pd(r1 + x + 2);
        __m256d c0 = _mm256_loadu_pd(r2 + x), c1 = _mm256_loadu_pd(r2 + x + 1), c2 = _mm256_loadu_pd(r2 + x + 2);
        sort3v(a0, a1, a2);
        sort3v(b0, b1, b2);
        sort3v(c0, c1, c2);
        const __m256d lo = _mm256_max_pd(_mm256_max_pd(a0, b0), c0);
        const __m256d mid = med3v(a1, b1, c1);
        const __m256d hi = _mm256_min_pd(_mm256_min_pd(a2, b2), c2);
        _mm256_storeu_pd(dst + x, med3v(lo, mid, hi));
    }
    for (std::size_t x = n4; x < n; ++x) {
        double a0 = r0[x], a1 = r0[x + 1], a2 = r0[x + 2];
        double b0 = r1[x], b1 = r1[x + 1], b2 = r1[x + 2];
        double c0 = r2[x], c1 = r2[x + 1], c2 = r2[x + 2];
        sort3s(a0, a1, a2);
        sort3s(b0, b1, b2);
        sort3s(c0, c1, c2);
        const double lo = kmax_s(kmax_s(a0, b0), c0);
        const double mid = med3s(a1, b1, c1);
        const double hi = kmin_s(kmin_s(a2, b2), c2);
        dst[x] = med3s(lo, mid, hi);
    }
}

void laplacian3_row(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n) {
    const __m256d four = _mm256_set1_pd(4.0);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t x = 0; x < n4; x += 4) {
        const __m256d ns = _mm256_add_pd(_mm256_loadu_pd(r0 + x + 1), _mm256_loadu_pd(r2 + x + 1));
        const __m256d we = _mm256_add_pd(_mm256_loadu_pd(r1 + x), _mm256_loadu_pd(r1 + x + 2));
        const __m256d center = _mm256_mul_pd(four, _mm256_loadu_pd(r1 + x + 1));
        _mm256_storeu_pd(dst + x, _mm256_sub_pd(_mm256_add_pd(ns, we), center));
    }
    for (std::size_t x = n4; x < n; ++x)
        dst[x] = ((r0[x + 1] + r2[x + 1]) + (r1[x] + r1[x + 2])) - 4.0 * r1[x + 1];
}

void local_variance(const double* m, const double* q, double* v, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d mv = _mm256_loadu_pd(m + i);
        const __m256d qv = _mm256_loadu_pd(q + i);
        _mm256_storeu_pd(v + i, _mm256_max_pd(_mm256_sub_pd(qv, _mm256_mul_pd(mv, mv)), zero));
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double d = q[i] - m[i] * m[i];
        v[i] = d > 0.0 ? d : 0.0;
    }
}

void wiener_apply(const double* x, const double* m, const double* v, double nu, double* dst, std::size_t n) {
    const __m256d vnu = _mm256_set1_pd(nu);
    const __m256d zero = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d den = _mm256_max_pd(vv, vnu);
        const __m256d num = _mm256_max_pd(_mm256_sub_pd(vv, vnu), zero);
        // den == 0 implies num == 0; mask the resulting NaN to a zero gain.
        __m256d gain = _mm256_div_pd(num, den);
        gain = _mm256_and_pd(gain, _mm256_cmp_pd(den, zero, _CMP_GT_OQ));
        const __m256d mv = _mm256_loadu_pd(m + i);
        const __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(mv, _mm256_mul_pd(gain, _mm256_sub_pd(xv, mv))));
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double den = v[i] > nu ? v[i] : nu;
        const double num = v[i] - nu > 0.0 ? v[i] - nu : 0.0;
        const double gain = den > 0.0 ? num / den : 0.0;
        dst[i] = m[i] + gain * (x[i] - m[i]);
    }
}

constexpr Backend kAvx2Backend = {
    "avx2",
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

const Backend* avx2_backend_table() { return &kAvx2Backend; }

} // namespace noisebench::kernels

#endif // __AVX2__
