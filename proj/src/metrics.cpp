#include "noisebench/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "noisebench/errors.hpp"
#include "noisebench/kernels.hpp"

namespace noisebench {

double mse(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b))
        throw shape_error("mse operands differ in shape: " + std::to_string(a.width()) + "x" +
                          std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                          std::to_string(b.height()));
    const double total = kernels::active_backend().sum_sq_diff(a.pixels().data(), b.pixels().data(), a.pixel_count());
    return total / static_cast<double>(a.pixel_count());
}

PsnrValue psnr(const ImageGrid& reference, const ImageGrid& test) {
    PsnrValue out;
    out.mse = mse(reference, test);
    if (out.mse == 0.0)
        out.db = std::numeric_limits<double>::infinity();
    else
        out.db = 10.0 * std::log10(255.0 * 255.0 / out.mse);
    return out;
}

} // namespace noisebench
