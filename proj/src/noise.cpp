#include "noisebench/noise.hpp"

#include <cmath>
#include <string>

#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_finite(double v, const char* which) {
    if (!std::isfinite(v))
        throw parameter_error(std::string(which) + " must be finite");
}

void check_unit_interval(double v, const char* which) {
    check_finite(v, which);
    if (v < 0.0 || v > 1.0)
        throw parameter_error(std::string(which) + " must lie in [0,1], got " + std::to_string(v));
}

int speckle_stages(double variance) {
    const long long k = std::llround(1.0 / variance);
    return k < 1 ? 1 : static_cast<int>(k);
}

template <typename PerRow>
ImageGrid generate_rows(const ImageGrid& img, std::uint64_t seed, PerRow per_row) {
    ImageGrid out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        Rng rng(derive_substream(seed, static_cast<std::uint64_t>(y)));
        per_row(img.row(y), out.row(y), y, rng);
    }
    return out;
}

} // namespace

NoiseKind kind_of(const NoiseSpec& spec) {
    return static_cast<NoiseKind>(spec.params.index());
}

std::string_view noise_name(NoiseKind kind) {
    switch (kind) {
    case NoiseKind::gaussian:
        return "gaussian";
    case NoiseKind::salt_pepper:
        return "salt_pepper";
    case NoiseKind::speckle:
        return "speckle";
    case NoiseKind::poisson:
        return "poisson";
    case NoiseKind::periodic:
        return "periodic";
    case NoiseKind::erlang:
        return "erlang";
    case NoiseKind::exponential:
        return "exponential";
    case NoiseKind::rayleigh:
        return "rayleigh";
    }
    return "unknown";
}

NoiseKind noise_kind_from_name(std::string_view name) {
    static constexpr NoiseKind kinds[] = {NoiseKind::gaussian, NoiseKind::salt_pepper, NoiseKind::speckle,
                                          NoiseKind::poisson,  NoiseKind::periodic,    NoiseKind::erlang,
                                          NoiseKind::exponential, NoiseKind::rayleigh};
    for (NoiseKind kind : kinds)
        if (noise_name(kind) == name)
            return kind;
    throw parameter_error("unknown noise kind \"" + std::string(name) +
                          "\" (expected gaussian|salt_pepper|speckle|poisson|periodic|erlang|exponential|rayleigh)");
}

NoiseSpec make_noise_spec(NoiseKind kind, bool clip) {
    NoiseSpec spec;
    spec.clip = clip;
    switch (kind) {
    case NoiseKind::gaussian:
        spec.params = GaussianNoise{};
        break;
    case NoiseKind::salt_pepper:
        spec.params = SaltPepperNoise{};
        break;
    case NoiseKind::speckle:
        spec.params = SpeckleNoise{};
        break;
    case NoiseKind::poisson:
        spec.params = PoissonNoise{};
        break;
    case NoiseKind::periodic:
        spec.params = PeriodicNoise{};
        break;
    case NoiseKind::erlang:
        spec.params = ErlangNoise{};
        break;
    case NoiseKind::exponential:
        spec.params = ExponentialNoise{};
        break;
    case NoiseKind::rayleigh:
        spec.params = RayleighNoise{};
        break;
    }
    return spec;
}

void validate(const NoiseSpec& spec) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianNoise>) {
                check_finite(p.mu, "gaussian mu");
                check_finite(p.sigma, "gaussian sigma");
                if (p.sigma < 0.0)
                    throw parameter_error("gaussian sigma must be >= 0, got " + std::to_string(p.sigma));
            } else if constexpr (std::is_same_v<T, SaltPepperNoise>) {
                check_unit_interval(p.density, "salt_pepper density");
                check_unit_interval(p.salt_fraction, "salt_pepper salt_fraction");
            } else if constexpr (std::is_same_v<T, SpeckleNoise>) {
                check_finite(p.variance, "speckle variance");
                if (p.variance < 0.0)
                    throw parameter_error("speckle variance must be >= 0, got " + std::to_string(p.variance));
            } else if constexpr (std::is_same_v<T, PoissonNoise>) {
                check_finite(p.peak, "poisson peak");
                if (p.peak <= 0.0)
                    throw parameter_error("poisson peak must be > 0, got " + std::to_string(p.peak));
            } else if constexpr (std::is_same_v<T, PeriodicNoise>) {
                check_finite(p.amplitude, "periodic amplitude");
                check_finite(p.phase, "periodic phase");
            } else if constexpr (std::is_same_v<T, ErlangNoise>) {
                check_finite(p.a, "erlang a");
                if (p.a <= 0.0)
                    throw parameter_error("erlang a must be > 0, got " + std::to_string(p.a));
                if (p.b < 1)
                    throw parameter_error("erlang b must be a positive integer, got " + std::to_string(p.b));
            } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                check_finite(p.a, "exponential a");
                if (p.a <= 0.0)
                    throw parameter_error("exponential a must be > 0, got " + std::to_string(p.a));
            } else if constexpr (std::is_same_v<T, RayleighNoise>) {
                check_finite(p.a, "rayleigh a");
                check_finite(p.b, "rayleigh b");
                if (p.b <= 0.0)
                    throw parameter_error("rayleigh b must be > 0, got " + std::to_string(p.b));
            }
        },
        spec.params);
}

ImageGrid apply_noise(const ImageGrid& img, const NoiseSpec& spec, std::uint64_t seed) {
    validate(spec);
    const int width = img.width();
    const int height = img.height();

    ImageGrid out = std::visit(
        [&](const auto& p) -> ImageGrid {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianNoise>) {
                return generate_rows(img, seed, [&p, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x)
                        dst[x] = in[x] + rng.sample_normal(p.mu, p.sigma);
                });
            } else if constexpr (std::is_same_v<T, SaltPepperNoise>) {
                const double salt_cut = p.density * p.salt_fraction;
                return generate_rows(img, seed, [&p, salt_cut, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x) {
                        const double u = rng.uniform01();
                        dst[x] = u < salt_cut ? 255.0 : (u < p.density ? 0.0 : in[x]);
                    }
                });
            } else if constexpr (std::is_same_v<T, SpeckleNoise>) {
                if (p.variance == 0.0)
                    return img; // degenerate multiplier G = 1
                const int k = speckle_stages(p.variance);
                const double rate = static_cast<double>(k);
                return generate_rows(img, seed, [k, rate, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x)
                        dst[x] = in[x] * rng.sample_gamma(rate, k);
                });
            } else if constexpr (std::is_same_v<T, PoissonNoise>) {
                const double to_lambda = p.peak / 255.0;
                const double from_count = 255.0 / p.peak;
                return generate_rows(img, seed,
                                     [to_lambda, from_count, width](const double* in, double* dst, int, Rng& rng) {
                                         for (int x = 0; x < width; ++x) {
                                             const double lambda = in[x] > 0.0 ? in[x] * to_lambda : 0.0;
                                             dst[x] = static_cast<double>(rng.sample_poisson(lambda)) * from_count;
                                         }
                                     });
            } else if constexpr (std::is_same_v<T, PeriodicNoise>) {
                // Deterministic sinusoid; the seed is unused.
                ImageGrid result(width, height);
                for (int y = 0; y < height; ++y) {
                    const double* in = img.row(y);
                    double* dst = result.row(y);
                    const double fy = static_cast<double>(p.cycles_y) * y / height;
                    for (int x = 0; x < width; ++x) {
                        const double fx = static_cast<double>(p.cycles_x) * x / width;
                        dst[x] = in[x] + p.amplitude * std::sin(2.0 * kPi * (fx + fy) + p.phase);
                    }
                }
                return result;
            } else if constexpr (std::is_same_v<T, ErlangNoise>) {
                return generate_rows(img, seed, [&p, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x)
                        dst[x] = in[x] + rng.sample_gamma(p.a, p.b);
                });
            } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                return generate_rows(img, seed, [&p, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x)
                        dst[x] = in[x] + rng.sample_exponential(p.a);
                });
            } else {
                return generate_rows(img, seed, [&p, width](const double* in, double* dst, int, Rng& rng) {
                    for (int x = 0; x < width; ++x)
                        dst[x] = in[x] + rng.sample_rayleigh(p.a, p.b);
                });
            }
        },
        spec.params);

    return spec.clip ? clip_to_byte_range(out) : out;
}

} // namespace noisebench
