#include "noisebench/bench.hpp"

#include <cmath>

namespace noisebench {

namespace {

// Fixed integer hash (splitmix64 finalizer) mapped to [-1, 1); gives the
// texture patch reproducible broadband detail without touching the Rng.
double hash_noise(int x, int y) {
    std::uint64_t z = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                      static_cast<std::uint32_t>(y);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

double sq(double v) { return v * v; }

} // namespace

ImageGrid synthetic_image() {
    const int n = 256;
    ImageGrid img(n, n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            // Smooth diagonal gradient covering the low mid-tones.
            double v = 36.0 + 0.10 * x + 0.06 * y;
            // Soft blob in the lower left.
            v += 38.0 * std::exp(-(sq(x - 72.0) + sq(y - 210.0)) / (2.0 * 28.0 * 28.0));
            // Step-edged rectangles: one bright, one dark.
            if (x >= 30 && x < 62 && y >= 148 && y < 180)
                v = 198.0;
            if (x >= 36 && x < 76 && y >= 40 && y < 80)
                v = 16.0;
            // Four-level cell-mosaic texture block on the right (5x4 px cells).
            if (x >= 136 && x < 240 && y >= 36 && y < 148) {
                double q = std::floor((hash_noise(x / 5, y / 4) + 1.0) * 2.0);
                v = 100.0 + 52.0 * (std::min(q, 3.0) - 1.5);
            }
            img.at(x, y) = static_cast<double>(round_to_byte(v));
        }
    }
    return img;
}

} // namespace noisebench
