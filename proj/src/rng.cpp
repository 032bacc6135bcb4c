#include "noisebench/rng.hpp"

#include <cmath>
#include <string>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const unsigned char* bytes, std::size_t n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

void require_finite_param(double v, const char* name) {
    if (!std::isfinite(v))
        throw parameter_error(std::string(name) + " must be finite");
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& word : state_)
        word = splitmix64_next(seed);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::sample_normal(double mu, double sigma) {
    require_finite_param(mu, "normal mu");
    require_finite_param(sigma, "normal sigma");
    if (sigma < 0.0)
        throw parameter_error("normal sigma must be >= 0, got " + std::to_string(sigma));
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * kPi * u2);
    return mu + sigma * z;
}

std::int64_t Rng::sample_poisson(double lambda) {
    require_finite_param(lambda, "poisson lambda");
    if (lambda < 0.0)
        throw parameter_error("poisson lambda must be >= 0, got " + std::to_string(lambda));
    if (lambda == 0.0)
        return 0;
    if (lambda <= 30.0) {
        const double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }
    // Large-lambda regime: normal approximation, rounded and clamped to the
    // support instead of rejection so draw count stays fixed at one normal.
    const double z = sample_normal(0.0, 1.0);
    const double approx = lambda + std::sqrt(lambda) * z;
    return approx <= 0.0 ? 0 : std::llround(approx);
}

double Rng::sample_gamma(double a, int b) {
    require_finite_param(a, "gamma rate");
    if (a <= 0.0)
        throw parameter_error("gamma rate a must be > 0, got " + std::to_string(a));
    if (b < 1)
        throw parameter_error("gamma shape b must be a positive integer, got " + std::to_string(b));
    double total = 0.0;
    for (int stage = 0; stage < b; ++stage)
        total += exponential_from_uniform(uniform01(), a);
    return total;
}

double Rng::sample_exponential(double a) {
    require_finite_param(a, "exponential rate");
    if (a <= 0.0)
        throw parameter_error("exponential rate a must be > 0, got " + std::to_string(a));
    return exponential_from_uniform(uniform01(), a);
}

double Rng::sample_rayleigh(double a, double b) {
    require_finite_param(a, "rayleigh a");
    require_finite_param(b, "rayleigh b");
    if (b <= 0.0)
        throw parameter_error("rayleigh b must be > 0, got " + std::to_string(b));
    return rayleigh_from_uniform(uniform01(), a, b);
}

std::uint64_t derive_substream(std::uint64_t seed, std::string_view label) {
    const std::uint64_t h = fnv1a(reinterpret_cast<const unsigned char*>(label.data()), label.size());
    return splitmix64_mix(seed ^ h);
}

std::uint64_t derive_substream(std::uint64_t seed, std::uint64_t index) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<unsigned char>((index >> (8 * i)) & 0xffu);
    return splitmix64_mix(seed ^ fnv1a(bytes, sizeof bytes));
}

double exponential_from_uniform(double u, double a) {
    return -std::log1p(-u) / a;
}

double rayleigh_from_uniform(double u, double a, double b) {
    return a + std::sqrt(-b * std::log1p(-u));
}

} // namespace noisebench
