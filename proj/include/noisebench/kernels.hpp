#pragma once

#include <cstddef>

namespace noisebench::kernels {

// Inner arithmetic loops, provided as a scalar reference implementation and
// an AVX2 variant selected at runtime. Both variants of a kernel are
// contracted to produce bit-identical output for the same input: they use
// the same per-element operation order, the same min/max tie convention
// (return the second operand on equality), no FMA contraction, and the
// reductions accumulate in four interleaved lanes combined as
// (l0+l1)+(l2+l3) followed by a sequential tail.
//
// Windowed kernels read replicate-padded buffers prepared by the caller:
//   *_h : padded row of length n+taps-1, out[x] = f(padded[x..x+taps-1])
//   *_v : padded plane of (rows+taps-1) x width, out[y][x] = f over rows
//   *3_row : three padded rows of length n+2, 3x3 stencil around r1[x+1]
struct Backend {
    const char* name;

    void (*clamp255)(const double* src, double* dst, std::size_t n);
    void (*add)(const double* a, const double* b, double* dst, std::size_t n);
    void (*mul)(const double* a, const double* b, double* dst, std::size_t n);
    void (*scale)(const double* a, double s, double* dst, std::size_t n);

    double (*sum)(const double* a, std::size_t n);
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

    void (*box_h)(const double* padded, int taps, double* dst, std::size_t n);
    void (*box_v)(const double* padded, int taps, std::size_t width, std::size_t rows, double* dst);
    void (*conv_h)(const double* padded, const double* k, int taps, double* dst, std::size_t n);
    void (*conv_v)(const double* padded, const double* k, int taps, std::size_t width, std::size_t rows, double* dst);

    void (*median3_row)(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n);
    void (*laplacian3_row)(const double* r0, const double* r1, const double* r2, double* dst, std::size_t n);

    // v = max(0, q - m^2); the local-variance step of the adaptive wiener.
    void (*local_variance)(const double* m, const double* q, double* v, std::size_t n);
    // dst = m + gain*(x - m), gain = max(0, v - nu) / max(v, nu) (0 when both are 0).
    void (*wiener_apply)(const double* x, const double* m, const double* v, double nu, double* dst, std::size_t n);
};

const Backend& scalar_backend();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Backend* avx2_backend();

// Runtime selection, overridable with NOISEBENCH_SIMD=scalar|avx2|auto.
// Cached on first use.
const Backend& active_backend();

} // namespace noisebench::kernels
