#include "noisebench/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "noisebench/errors.hpp"
#include "noisebench/kernels.hpp"
#include "noisebench/spectral.hpp"

namespace noisebench {

namespace {

int clamp_index(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

void check_window(int w, const char* which) {
    if (w < 1 || w % 2 == 0)
        throw parameter_error(std::string(which) + " window must be an odd integer >= 1, got " + std::to_string(w));
}

void check_positive(double v, const char* which) {
    if (!(std::isfinite(v) && v > 0.0))
        throw parameter_error(std::string(which) + " must be finite and > 0, got " + std::to_string(v));
}

// dst has room for width + 2; replicates one pixel at each end.
void pad1_row(const double* row, int width, double* dst) {
    dst[0] = row[0];
    std::memcpy(dst + 1, row, static_cast<std::size_t>(width) * sizeof(double));
    dst[width + 1] = row[width - 1];
}

// Separable windowed sums: replicate-padded horizontal pass per row, then a
// replicate-padded vertical pass over the intermediate (padding the
// intermediate's edge rows is equivalent to padding the source first).
ImageGrid window_sums(const ImageGrid& img, int taps) {
    const auto& be = kernels::active_backend();
    const int width = img.width();
    const int height = img.height();
    const int r = taps / 2;
    ImageGrid tmp(width, height);
    std::vector<double> padded_row(static_cast<std::size_t>(width) + 2 * r);
    for (int y = 0; y < height; ++y) {
        const double* row = img.row(y);
        for (int i = 0; i < r; ++i)
            padded_row[static_cast<std::size_t>(i)] = row[0];
        std::memcpy(padded_row.data() + r, row, static_cast<std::size_t>(width) * sizeof(double));
        for (int i = 0; i < r; ++i)
            padded_row[static_cast<std::size_t>(r + width + i)] = row[width - 1];
        be.box_h(padded_row.data(), taps, tmp.row(y), static_cast<std::size_t>(width));
    }
    std::vector<double> plane(static_cast<std::size_t>(height + 2 * r) * width);
    for (int y = 0; y < height + 2 * r; ++y) {
        const int src = clamp_index(y - r, height - 1);
        std::memcpy(plane.data() + static_cast<std::size_t>(y) * width, tmp.row(src),
                    static_cast<std::size_t>(width) * sizeof(double));
    }
    ImageGrid out(width, height);
    be.box_v(plane.data(), taps, static_cast<std::size_t>(width), static_cast<std::size_t>(height),
             out.pixels().data());
    return out;
}

ImageGrid separable_convolve(const ImageGrid& img, const std::vector<double>& taps) {
    const auto& be = kernels::active_backend();
    const int width = img.width();
    const int height = img.height();
    const int n_taps = static_cast<int>(taps.size());
    const int r = n_taps / 2;
    ImageGrid tmp(width, height);
    std::vector<double> padded_row(static_cast<std::size_t>(width) + 2 * r);
    for (int y = 0; y < height; ++y) {
        const double* row = img.row(y);
        for (int i = 0; i < r; ++i)
            padded_row[static_cast<std::size_t>(i)] = row[0];
        std::memcpy(padded_row.data() + r, row, static_cast<std::size_t>(width) * sizeof(double));
        for (int i = 0; i < r; ++i)
            padded_row[static_cast<std::size_t>(r + width + i)] = row[width - 1];
        be.conv_h(padded_row.data(), taps.data(), n_taps, tmp.row(y), static_cast<std::size_t>(width));
    }
    std::vector<double> plane(static_cast<std::size_t>(height + 2 * r) * width);
    for (int y = 0; y < height + 2 * r; ++y) {
        const int src = clamp_index(y - r, height - 1);
        std::memcpy(plane.data() + static_cast<std::size_t>(y) * width, tmp.row(src),
                    static_cast<std::size_t>(width) * sizeof(double));
    }
    ImageGrid out(width, height);
    be.conv_v(plane.data(), taps.data(), n_taps, static_cast<std::size_t>(width), static_cast<std::size_t>(height),
              out.pixels().data());
    return out;
}

} // namespace

ImageGrid median_filter(const ImageGrid& img, int w) {
    check_window(w, "median");
    if (w == 1)
        return img;
    const int width = img.width();
    const int height = img.height();
    ImageGrid out(width, height);
    if (w == 3) {
        const auto& be = kernels::active_backend();
        std::vector<double> p0(static_cast<std::size_t>(width) + 2);
        std::vector<double> p1(static_cast<std::size_t>(width) + 2);
        std::vector<double> p2(static_cast<std::size_t>(width) + 2);
        for (int y = 0; y < height; ++y) {
            pad1_row(img.row(clamp_index(y - 1, height - 1)), width, p0.data());
            pad1_row(img.row(y), width, p1.data());
            pad1_row(img.row(clamp_index(y + 1, height - 1)), width, p2.data());
            be.median3_row(p0.data(), p1.data(), p2.data(), out.row(y), static_cast<std::size_t>(width));
        }
        return out;
    }
    const int r = w / 2;
    std::vector<double> window(static_cast<std::size_t>(w) * w);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::size_t idx = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const double* row = img.row(clamp_index(y + dy, height - 1));
                for (int dx = -r; dx <= r; ++dx)
                    window[idx++] = row[clamp_index(x + dx, width - 1)];
            }
            const std::size_t mid = window.size() / 2;
            std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(mid), window.end());
            out.at(x, y) = window[mid];
        }
    }
    return out;
}

ImageGrid mean_filter(const ImageGrid& img, int w) {
    check_window(w, "mean");
    ImageGrid out = window_sums(img, w);
    const double denom = static_cast<double>(w) * static_cast<double>(w);
    for (double& v : out.pixels())
        v /= denom;
    return out;
}

ImageGrid wiener_filter(const ImageGrid& img, int w, std::optional<double> noise_var) {
    check_window(w, "wiener");
    if (noise_var && !(std::isfinite(*noise_var) && *noise_var >= 0.0))
        throw parameter_error("wiener noise variance must be finite and >= 0, got " + std::to_string(*noise_var));
    const auto& be = kernels::active_backend();
    const std::size_t n = img.pixel_count();
    const double denom = static_cast<double>(w) * static_cast<double>(w);

    ImageGrid m = window_sums(img, w);
    for (double& v : m.pixels())
        v /= denom;
    ImageGrid sq(img.width(), img.height());
    be.mul(img.pixels().data(), img.pixels().data(), sq.pixels().data(), n);
    ImageGrid q = window_sums(sq, w);
    for (double& v : q.pixels())
        v /= denom;

    ImageGrid var(img.width(), img.height());
    be.local_variance(m.pixels().data(), q.pixels().data(), var.pixels().data(), n);
    const double nu = noise_var ? *noise_var : be.sum(var.pixels().data(), n) / static_cast<double>(n);
    if (nu == 0.0)
        return img; // unit gain everywhere: exact identity
    ImageGrid out(img.width(), img.height());
    be.wiener_apply(img.pixels().data(), m.pixels().data(), var.pixels().data(), nu, out.pixels().data(), n);
    return out;
}

std::vector<double> gaussian_taps(double sigma) {
    check_positive(sigma, "gaussian sigma");
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int k = -r; k <= r; ++k)
        taps[static_cast<std::size_t>(k + r)] = std::exp(-static_cast<double>(k) * k * inv);
    double norm = 0.0;
    for (double t : taps)
        norm += t;
    for (double& t : taps)
        t /= norm;
    return taps;
}

ImageGrid gaussian_filter(const ImageGrid& img, double sigma) {
    return separable_convolve(img, gaussian_taps(sigma));
}

ImageGrid lowpass_filter(const ImageGrid& img, double d0) {
    check_positive(d0, "lowpass cutoff");
    const double inv = 1.0 / (2.0 * d0 * d0);
    return apply_frequency_response(
        img, [inv](int u, int v) { return std::exp(-static_cast<double>(u) * u * inv - static_cast<double>(v) * v * inv); });
}

ImageGrid highpass_filter(const ImageGrid& img, double d0) {
    check_positive(d0, "highpass cutoff");
    const double inv = 1.0 / (2.0 * d0 * d0);
    return apply_frequency_response(img, [inv](int u, int v) {
        return 1.0 - std::exp(-static_cast<double>(u) * u * inv - static_cast<double>(v) * v * inv);
    });
}

ImageGrid bilateral_filter(const ImageGrid& img, double sigma_s, double sigma_r) {
    check_positive(sigma_s, "bilateral sigma_s");
    check_positive(sigma_r, "bilateral sigma_r");
    const int width = img.width();
    const int height = img.height();
    const int r = static_cast<int>(std::ceil(3.0 * sigma_s));
    const int span = 2 * r + 1;

    std::vector<double> spatial(static_cast<std::size_t>(span) * span);
    const double inv_s = 1.0 / (2.0 * sigma_s * sigma_s);
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            spatial[static_cast<std::size_t>(dy + r) * span + (dx + r)] =
                std::exp(-(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy) * inv_s);

    const int pw = width + 2 * r;
    std::vector<double> padded(static_cast<std::size_t>(height + 2 * r) * pw);
    for (int y = 0; y < height + 2 * r; ++y) {
        const double* row = img.row(clamp_index(y - r, height - 1));
        double* dst = padded.data() + static_cast<std::size_t>(y) * pw;
        for (int i = 0; i < r; ++i)
            dst[i] = row[0];
        std::memcpy(dst + r, row, static_cast<std::size_t>(width) * sizeof(double));
        for (int i = 0; i < r; ++i)
            dst[r + width + i] = row[width - 1];
    }

    const double inv_r = 1.0 / (2.0 * sigma_r * sigma_r);
    ImageGrid out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double center = img.at(x, y);
            double num = 0.0;
            double den = 0.0;
            for (int dy = 0; dy < span; ++dy) {
                const double* prow = padded.data() + static_cast<std::size_t>(y + dy) * pw + x;
                const double* srow = spatial.data() + static_cast<std::size_t>(dy) * span;
                for (int dx = 0; dx < span; ++dx) {
                    const double value = prow[dx];
                    const double diff = value - center;
                    const double weight = srow[dx] * std::exp(-diff * diff * inv_r);
                    num += weight * value;
                    den += weight;
                }
            }
            out.at(x, y) = num / den;
        }
    }
    return out;
}

ImageGrid laplacian_filter(const ImageGrid& img) {
    const auto& be = kernels::active_backend();
    const int width = img.width();
    const int height = img.height();
    ImageGrid out(width, height);
    std::vector<double> p0(static_cast<std::size_t>(width) + 2);
    std::vector<double> p1(static_cast<std::size_t>(width) + 2);
    std::vector<double> p2(static_cast<std::size_t>(width) + 2);
    for (int y = 0; y < height; ++y) {
        pad1_row(img.row(clamp_index(y - 1, height - 1)), width, p0.data());
        pad1_row(img.row(y), width, p1.data());
        pad1_row(img.row(clamp_index(y + 1, height - 1)), width, p2.data());
        be.laplacian3_row(p0.data(), p1.data(), p2.data(), out.row(y), static_cast<std::size_t>(width));
    }
    return out;
}

FilterKind kind_of(const FilterSpec& spec) {
    return static_cast<FilterKind>(spec.index());
}

std::string_view filter_name(FilterKind kind) {
    switch (kind) {
    case FilterKind::median:
        return "median";
    case FilterKind::mean:
        return "mean";
    case FilterKind::wiener:
        return "wiener";
    case FilterKind::gaussian:
        return "gaussian";
    case FilterKind::lowpass:
        return "lowpass";
    case FilterKind::highpass:
        return "highpass";
    case FilterKind::bilateral:
        return "bilateral";
    case FilterKind::laplacian:
        return "laplacian";
    }
    return "unknown";
}

FilterKind filter_kind_from_name(std::string_view name) {
    static constexpr FilterKind kinds[] = {FilterKind::median,  FilterKind::mean,     FilterKind::wiener,
                                           FilterKind::gaussian, FilterKind::lowpass, FilterKind::highpass,
                                           FilterKind::bilateral, FilterKind::laplacian};
    for (FilterKind kind : kinds)
        if (filter_name(kind) == name)
            return kind;
    throw parameter_error("unknown filter kind \"" + std::string(name) +
                          "\" (expected median|mean|wiener|gaussian|lowpass|highpass|bilateral|laplacian)");
}

void validate(const FilterSpec& spec) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MedianFilter>)
                check_window(f.window, "median");
            else if constexpr (std::is_same_v<T, MeanFilter>)
                check_window(f.window, "mean");
            else if constexpr (std::is_same_v<T, WienerFilter>) {
                check_window(f.window, "wiener");
                if (f.noise_var && !(std::isfinite(*f.noise_var) && *f.noise_var >= 0.0))
                    throw parameter_error("wiener noise variance must be finite and >= 0, got " +
                                          std::to_string(*f.noise_var));
            } else if constexpr (std::is_same_v<T, GaussianFilter>)
                check_positive(f.sigma, "gaussian sigma");
            else if constexpr (std::is_same_v<T, LowpassFilter>)
                check_positive(f.cutoff, "lowpass cutoff");
            else if constexpr (std::is_same_v<T, HighpassFilter>)
                check_positive(f.cutoff, "highpass cutoff");
            else if constexpr (std::is_same_v<T, BilateralFilter>) {
                check_positive(f.sigma_s, "bilateral sigma_s");
                check_positive(f.sigma_r, "bilateral sigma_r");
            }
        },
        spec);
}

ImageGrid apply_filter(const ImageGrid& img, const FilterSpec& spec) {
    validate(spec);
    return std::visit(
        [&img](const auto& f) -> ImageGrid {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MedianFilter>)
                return median_filter(img, f.window);
            else if constexpr (std::is_same_v<T, MeanFilter>)
                return mean_filter(img, f.window);
            else if constexpr (std::is_same_v<T, WienerFilter>)
                return wiener_filter(img, f.window, f.noise_var);
            else if constexpr (std::is_same_v<T, GaussianFilter>)
                return gaussian_filter(img, f.sigma);
            else if constexpr (std::is_same_v<T, LowpassFilter>)
                return lowpass_filter(img, f.cutoff);
            else if constexpr (std::is_same_v<T, HighpassFilter>)
                return highpass_filter(img, f.cutoff);
            else if constexpr (std::is_same_v<T, BilateralFilter>)
                return bilateral_filter(img, f.sigma_s, f.sigma_r);
            else
                return laplacian_filter(img);
        },
        spec);
}

} // namespace noisebench
