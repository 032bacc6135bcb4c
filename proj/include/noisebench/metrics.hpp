#pragma once

#include "noisebench/image.hpp"

namespace noisebench {

/// PSNR against a 255 peak. db is +infinity exactly when mse == 0.
struct PsnrValue {
    double db = 0.0;
    double mse = 0.0;
};

/// Mean squared error over raw (possibly unclipped) values.
/// Throws shape_error on dimension mismatch.
double mse(const ImageGrid& a, const ImageGrid& b);

/// 10*log10(255^2 / mse); MAX is fixed at 255 regardless of the actual
/// value range, so heavily corrupted unclipped images score negative.
PsnrValue psnr(const ImageGrid& reference, const ImageGrid& test);

} // namespace noisebench
