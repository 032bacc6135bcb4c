#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "noisebench/imgio.hpp"

namespace noisebench {

std::array<NoiseSpec, 8> default_noise_specs(bool clip = true);
std::array<FilterSpec, 8> default_filter_specs();

/// Everything run_benchmark needs besides the clean image. The plan's clip
/// mode overrides each noise spec's own flag and also decides whether
/// filtered images are clipped before scoring.
struct BenchPlan {
    std::uint64_t seed = 42;
    bool clip = true;
    std::array<NoiseSpec, 8> noise_specs = default_noise_specs(); // kNoiseOrder
    std::array<FilterSpec, 8> filter_specs = default_filter_specs(); // kFilterOrder
    std::optional<std::filesystem::path> dump_dir;
    std::string image_id = "image";
};

/// Index of the row maximum, ties broken toward the earlier filter in
/// kFilterOrder.
FilterKind best_filter(const std::array<double, 8>& cells);

/// Human-readable parameter summary, e.g. "mu=0 sigma=20".
std::string describe_params(const NoiseSpec& spec);

/// The full 8x8 matrix: one noise realization per row (sub-seed derived
/// from the noise kind label), all eight filters scored against the clean
/// image. Rows may run in parallel, capped by env NOISEBENCH_THREADS;
/// results are identical at every parallelism level. When dump_dir is set,
/// the noisy image and every filtered image are written there as PGM.
BenchReport run_benchmark(const ImageGrid& clean, const BenchPlan& plan);

/// Deterministic, procedurally defined 256x256 grayscale test image:
/// smooth gradient, a soft blob, step-edged rectangles, and a broadband
/// texture patch. Integer-valued, so it survives PGM roundtrips exactly.
ImageGrid synthetic_image();

} // namespace noisebench
