#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace noisebench {

/// Deterministic xoshiro256** generator seeded through splitmix64, plus the
/// distribution samplers used by the noise models. Sequences are
/// bit-identical across platforms for a given seed. Instances are
/// single-owner; parallel code derives one sub-stream per task with
/// derive_substream before fan-out.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0,1) with 53 significant bits.
    double uniform01();

    /// Box-Muller normal draw; consumes two uniforms. sigma == 0 yields mu
    /// exactly. Negative sigma throws parameter_error.
    double sample_normal(double mu, double sigma);

    /// Poisson count with mean lambda: Knuth multiplication for lambda <= 30,
    /// clamped-normal approximation above. Negative lambda throws
    /// parameter_error.
    std::int64_t sample_poisson(double lambda);

    /// Erlang(rate a, integer shape b) as a sum of b exponentials.
    /// Requires a > 0 and b >= 1, else parameter_error.
    double sample_gamma(double a, int b);

    /// Exponential(rate a) by inverse CDF. Requires a > 0.
    double sample_exponential(double a);

    /// Rayleigh with offset a and scale b: mean a + sqrt(pi*b/4),
    /// variance b*(4-pi)/4. Requires b > 0.
    double sample_rayleigh(double a, double b);

private:
    std::array<std::uint64_t, 4> state_;
};

/// Pure (seed, label) -> seed mapping used to split statistically
/// independent sub-streams. label is FNV-1a hashed, combined with the seed,
/// and finalized with the splitmix64 mixer.
std::uint64_t derive_substream(std::uint64_t seed, std::string_view label);
std::uint64_t derive_substream(std::uint64_t seed, std::uint64_t index);

/// Inverse-CDF maps exposed for direct inspection; the samplers call these.
/// Both use (1 - u) so u = 0 is safe.
double exponential_from_uniform(double u, double a);
double rayleigh_from_uniform(double u, double a, double b);

} // namespace noisebench
