#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "noisebench/filters.hpp"
#include "noisebench/image.hpp"
#include "noisebench/noise.hpp"

namespace noisebench {

/// Canonical report orders: noise rows top to bottom, filter columns (and
/// argmax tie-break preference) left to right.
inline constexpr std::array<NoiseKind, 8> kNoiseOrder{
    NoiseKind::gaussian, NoiseKind::salt_pepper, NoiseKind::speckle,      NoiseKind::poisson,
    NoiseKind::periodic, NoiseKind::erlang,      NoiseKind::exponential, NoiseKind::rayleigh};

inline constexpr std::array<FilterKind, 8> kFilterOrder{
    FilterKind::median,  FilterKind::mean,     FilterKind::wiener,    FilterKind::gaussian,
    FilterKind::lowpass, FilterKind::highpass, FilterKind::bilateral, FilterKind::laplacian};

struct BenchRow {
    NoiseKind noise = NoiseKind::gaussian;
    std::string params;              // human-readable parameter summary
    std::array<double, 8> psnr_db{}; // keyed by kFilterOrder
    FilterKind best = FilterKind::median;
};

struct BenchReport {
    std::string image_id;
    std::uint64_t seed = 0;
    bool clip_mode = true;
    std::vector<BenchRow> rows; // exactly 8, in kNoiseOrder
    std::string tool_version;
};

/// Decode binary PGM ("P5", maxval <= 255). Throws parse_error naming the
/// offending field (magic, width, height, maxval, pixel payload).
ImageGrid read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical binary PGM: "P5\n<width> <height>\n255\n" then one byte per
/// pixel, clipped and rounded half away from zero. Byte-exact for a given
/// image.
std::vector<std::uint8_t> write_pgm(const ImageGrid& img);

/// File wrappers; filesystem failures raise io_error.
ImageGrid load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const ImageGrid& img);
void save_text(const std::filesystem::path& path, std::string_view text);

/// Fixed 4-decimal formatting, '.' separator regardless of locale;
/// +infinity prints as "inf".
std::string format_psnr_db(double db);

/// CSV matrix: header "noise,median,...,laplacian,best" then one row per
/// noise kind in canonical order, LF line endings.
std::string write_report_csv(const BenchReport& report);

/// Markdown table carrying the same cells as the CSV plus run metadata.
std::string write_report_markdown(const BenchReport& report);

/// 256 lines "bin,count" for bins 0..255.
std::string write_histogram_csv(const Histogram& h);

} // namespace noisebench
