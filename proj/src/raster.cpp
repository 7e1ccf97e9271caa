#include "ocrtune/raster.hpp"

#include <cmath>
#include <string>

#include "ocrtune/errors.hpp"

namespace ocrtune {

Raster::Raster(int width, int height, std::uint8_t fill) {
    if (width < 1 || height < 1) {
        throw InvalidParameter("raster dimensions must be positive, got " +
                               std::to_string(width) + "x" + std::to_string(height));
    }
    pixels_ = PixelArray::Constant(height, width, fill);
}

Raster::Raster(PixelArray pixels) : pixels_(std::move(pixels)) {
    if (pixels_.rows() < 1 || pixels_.cols() < 1) {
        throw InvalidParameter("raster dimensions must be positive");
    }
}

Raster Raster::from_values(int width, int height, std::span<const int> values) {
    Raster out(width, height);
    if (values.size() != out.size()) {
        throw MalformedInput("expected " + std::to_string(out.size()) + " pixels, got " +
                             std::to_string(values.size()));
    }
    auto dst = out.data();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > 255) {
            throw MalformedInput("pixel value out of range: " + std::to_string(values[i]));
        }
        dst[i] = static_cast<std::uint8_t>(values[i]);
    }
    return out;
}

std::vector<int> Raster::values() const {
    auto px = data();
    return {px.begin(), px.end()};
}

bool Raster::operator==(const Raster& other) const {
    return width() == other.width() && height() == other.height() &&
           (pixels_ == other.pixels_).all();
}

Raster invert(const Raster& r) {
    PixelArray out = (255 - r.pixels().cast<int>()).cast<std::uint8_t>();
    return Raster(std::move(out));
}

std::uint8_t saturate_round(double value) noexcept {
    const double rounded = std::round(value);  // half away from zero
    if (!(rounded > 0.0)) return 0;
    if (rounded >= 255.0) return 255;
    return static_cast<std::uint8_t>(rounded);
}

Raster to_grayscale(const RgbPlanes& rgb) {
    const auto n = static_cast<std::size_t>(rgb.width) * static_cast<std::size_t>(rgb.height);
    if (rgb.width < 1 || rgb.height < 1 || rgb.red.size() != n || rgb.green.size() != n ||
        rgb.blue.size() != n) {
        throw MalformedInput("colour planes do not match the declared dimensions");
    }
    Raster out(rgb.width, rgb.height);
    auto dst = out.data();
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = saturate_round(0.299 * rgb.red[i] + 0.587 * rgb.green[i] + 0.114 * rgb.blue[i]);
    }
    return out;
}

}  // namespace ocrtune
