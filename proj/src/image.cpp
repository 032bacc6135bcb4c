#include "noisebench/image.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "noisebench/errors.hpp"
#include "noisebench/kernels.hpp"

namespace noisebench {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1)
        throw parameter_error("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                              std::to_string(height));
}

} // namespace

ImageGrid::ImageGrid(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImageGrid::ImageGrid(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data_.size() != expected)
        throw parameter_error("pixel buffer holds " + std::to_string(data_.size()) + " values, expected " +
                              std::to_string(expected));
}

double clip255(double v) noexcept {
    if (v < 0.0)
        return 0.0;
    if (v > 255.0)
        return 255.0;
    return v;
}

int round_to_byte(double v) noexcept {
    return static_cast<int>(std::llround(clip255(v)));
}

ImageGrid clip_to_byte_range(const ImageGrid& img) {
    ImageGrid out(img.width(), img.height());
    kernels::active_backend().clamp255(img.pixels().data(), out.pixels().data(), img.pixel_count());
    return out;
}

Histogram histogram(const ImageGrid& img) {
    Histogram h;
    for (double v : img.pixels())
        ++h.bins[static_cast<std::size_t>(round_to_byte(v))];
    h.total = img.pixel_count();
    return h;
}

} // namespace noisebench
