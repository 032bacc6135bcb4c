#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace noisebench {

/// Row-major grid of real-valued intensities. Nominal display range is
/// [0, 255] but values may leave that range while a pipeline is running
/// (unclipped noise, high-pass responses); they must stay finite.
class ImageGrid {
public:
    ImageGrid(int width, int height, double fill = 0.0);
    ImageGrid(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return data_.size(); }

    double at(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double& at(int x, int y) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    const double* row(int y) const noexcept { return data_.data() + static_cast<std::size_t>(y) * width_; }
    double* row(int y) noexcept { return data_.data() + static_cast<std::size_t>(y) * width_; }

    std::span<const double> pixels() const noexcept { return data_; }
    std::span<double> pixels() noexcept { return data_; }

    bool same_shape(const ImageGrid& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_;
    int height_;
    std::vector<double> data_;
};

/// 256-bin census of clipped-and-rounded intensities.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

/// Saturate a single value into [0, 255]. No rounding.
double clip255(double v) noexcept;

/// Quantize to a display byte: clip, then round half away from zero.
int round_to_byte(double v) noexcept;

ImageGrid clip_to_byte_range(const ImageGrid& img);
Histogram histogram(const ImageGrid& img);

} // namespace noisebench
