#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ocrtune {

using PixelArray =
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit grayscale image, row-major, indexed as (row, col).
class Raster {
public:
    Raster() : Raster(1, 1) {}
    Raster(int width, int height, std::uint8_t fill = 0);
    explicit Raster(PixelArray pixels);

    /// Builds a raster from integer samples, rejecting values outside [0,255]
    /// or a sample count that does not match width * height.
    static Raster from_values(int width, int height, std::span<const int> values);

    int width() const noexcept { return static_cast<int>(pixels_.cols()); }
    int height() const noexcept { return static_cast<int>(pixels_.rows()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(pixels_.size()); }

    std::uint8_t operator()(int row, int col) const { return pixels_(row, col); }
    std::uint8_t& operator()(int row, int col) { return pixels_(row, col); }

    const PixelArray& pixels() const noexcept { return pixels_; }
    PixelArray& pixels() noexcept { return pixels_; }

    std::span<const std::uint8_t> data() const noexcept {
        return {pixels_.data(), size()};
    }
    std::span<std::uint8_t> data() noexcept { return {pixels_.data(), size()}; }

    std::vector<int> values() const;

    bool operator==(const Raster& other) const;

private:
    PixelArray pixels_;
};

/// 255 - p for every pixel.
Raster invert(const Raster& r);

/// Three equally sized colour planes.
struct RgbPlanes {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> red;
    std::vector<std::uint8_t> green;
    std::vector<std::uint8_t> blue;
};

/// Luma conversion: round(0.299 R + 0.587 G + 0.114 B).
Raster to_grayscale(const RgbPlanes& rgb);

/// Round half away from zero, then clamp to [0,255]. The single rounding rule
/// used by every operator that produces fractional intensities.
std::uint8_t saturate_round(double value) noexcept;

}  // namespace ocrtune
