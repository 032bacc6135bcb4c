#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "noisebench/image.hpp"

namespace noisebench {

// Per-kind parameter records. Declaration order below is the canonical
// noise order used for report rows.
struct GaussianNoise {
    double mu = 0.0;
    double sigma = 25.0;
};
struct SaltPepperNoise {
    double density = 0.05;      // probability a pixel is replaced
    double salt_fraction = 0.5; // replaced pixel is 255 with this probability, else 0
};
struct SpeckleNoise {
    double variance = 0.02; // multiplier is mean-1 Erlang with k = round(1/variance) stages
};
struct PoissonNoise {
    double peak = 255.0; // lambda per pixel = intensity * peak / 255
};
struct PeriodicNoise {
    double amplitude = 50.0;
    int cycles_x = 8;
    int cycles_y = 8;
    double phase = 0.0;
};
struct ErlangNoise {
    double a = 0.001;
    int b = 2;
};
struct ExponentialNoise {
    double a = 0.0005;
};
struct RayleighNoise {
    double a = 0.0;
    double b = 100.0;
};

enum class NoiseKind { gaussian, salt_pepper, speckle, poisson, periodic, erlang, exponential, rayleigh };

using NoiseParams = std::variant<GaussianNoise, SaltPepperNoise, SpeckleNoise, PoissonNoise, PeriodicNoise, ErlangNoise,
                                 ExponentialNoise, RayleighNoise>;

/// One of the eight noise models plus the clipping policy. clip=false keeps
/// out-of-range intensities so heavy additive noise can drive PSNR negative.
struct NoiseSpec {
    NoiseParams params;
    bool clip = true;
};

NoiseKind kind_of(const NoiseSpec& spec);
std::string_view noise_name(NoiseKind kind);
/// Throws parameter_error for an unknown name.
NoiseKind noise_kind_from_name(std::string_view name);
/// Default-parameter spec for the given kind.
NoiseSpec make_noise_spec(NoiseKind kind, bool clip = true);

/// Throws parameter_error when a parameter violates its constraint.
void validate(const NoiseSpec& spec);

/// Corrupt img per spec. Deterministic in (img, spec, seed): each row uses
/// the sub-stream derive_substream(seed, row index) and consumes draws in
/// x-ascending order, so results are independent of any parallel schedule.
/// Clips to [0,255] iff spec.clip.
ImageGrid apply_noise(const ImageGrid& img, const NoiseSpec& spec, std::uint64_t seed);

} // namespace noisebench
