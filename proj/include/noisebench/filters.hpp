#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "noisebench/image.hpp"

namespace noisebench {

// Per-filter parameter records. Declaration order below doubles as the
// canonical filter order used for report columns and argmax tie-breaking.
struct MedianFilter {
    int window = 3;
};
struct MeanFilter {
    int window = 3;
};
struct WienerFilter {
    int window = 3;
    std::optional<double> noise_var; // unset: estimated as the mean local variance
};
struct GaussianFilter {
    double sigma = 1.0;
};
struct LowpassFilter {
    double cutoff = 40.0;
};
struct HighpassFilter {
    double cutoff = 40.0;
};
struct BilateralFilter {
    double sigma_s = 3.0;
    double sigma_r = 30.0;
};
struct LaplacianFilter {};

enum class FilterKind { median, mean, wiener, gaussian, lowpass, highpass, bilateral, laplacian };

using FilterSpec = std::variant<MedianFilter, MeanFilter, WienerFilter, GaussianFilter, LowpassFilter, HighpassFilter,
                                BilateralFilter, LaplacianFilter>;

FilterKind kind_of(const FilterSpec& spec);
std::string_view filter_name(FilterKind kind);
/// Throws parameter_error for an unknown name.
FilterKind filter_kind_from_name(std::string_view name);

/// Throws parameter_error when a parameter violates its constraint
/// (even window, non-positive sigma or cutoff, negative noise variance).
void validate(const FilterSpec& spec);

/// Order-statistic median of the w x w replicate-padded neighborhood.
ImageGrid median_filter(const ImageGrid& img, int w);

/// Arithmetic mean of the w x w replicate-padded neighborhood.
ImageGrid mean_filter(const ImageGrid& img, int w);

/// Locally adaptive estimator out = m + max(0, v - nu)/max(v, nu) * (x - m)
/// with w x w local mean m and variance v; nu defaults to the mean of all
/// local variances. nu == 0 yields the input unchanged.
ImageGrid wiener_filter(const ImageGrid& img, int w, std::optional<double> noise_var = std::nullopt);

/// Convolution with a sampled Gaussian kernel of radius ceil(3*sigma),
/// renormalized to sum 1, applied as separable passes, replicate padding.
ImageGrid gaussian_filter(const ImageGrid& img, double sigma);

/// Normalized 1D taps of the kernel above (length 2*ceil(3*sigma)+1); the
/// 2D kernel is their outer product.
std::vector<double> gaussian_taps(double sigma);

/// Gaussian transfer function exp(-D^2/(2*D0^2)) over the centered
/// spectrum; output unclipped.
ImageGrid lowpass_filter(const ImageGrid& img, double d0);

/// Complementary transfer function 1 - exp(-D^2/(2*D0^2)); output
/// unclipped and possibly negative.
ImageGrid highpass_filter(const ImageGrid& img, double d0);

/// Brute-force bilateral over radius ceil(3*sigma_s), replicate padding,
/// unnormalized spatial/range Gaussians with explicit weight normalization.
ImageGrid bilateral_filter(const ImageGrid& img, double sigma_s, double sigma_r);

/// Raw response of the fixed 3x3 kernel [[0,1,0],[1,-4,1],[0,1,0]],
/// replicate padding; no clipping, no sharpening composite.
ImageGrid laplacian_filter(const ImageGrid& img);

/// Validate, then dispatch to the matching filter above.
ImageGrid apply_filter(const ImageGrid& img, const FilterSpec& spec);

} // namespace noisebench
