#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "ocrtune/errors.hpp"
#include "ocrtune/raster.hpp"

namespace ocrtune {

// Border extrapolation, using the reference library's integer codes.
enum class BorderMode : int {
    Constant = 0,    // zero outside the image (neutral element for erode/dilate)
    Replicate = 1,   // aaa|abcd|ddd
    Reflect = 2,     // cba|abcd|dcb
    Reflect101 = 3,  // dcb|abcd|cba, the library default
    Isolated = 4,    // outside cells are dropped and weights renormalised
};

BorderMode border_mode_from_code(int code);

/// Maps coordinate p of a line of length n to an in-image index, or nullopt
/// when the mode has no source pixel there (Constant, Isolated).
std::optional<int> border_index(int p, int n, BorderMode mode);

// Threshold types: binary, binary inverted, truncate, to-zero, to-zero inverted.
enum class ThresholdType : int { Binary = 0, BinaryInv = 1, Trunc = 2, ToZero = 3, ToZeroInv = 4 };

enum class AdaptiveMethod : int { Mean = 0, Gaussian = 1 };

enum class MorphOp { Opening, Closing, Gradient, TopHat, BlackHat };

/// Rectangular all-ones k x k footprint anchored at (k/2, k/2).
struct StructuringElement {
    int size = 3;

    int anchor() const noexcept { return size / 2; }
    // Footprint offsets relative to the anchor: [first, last].
    int first_offset() const noexcept { return -anchor(); }
    int last_offset() const noexcept { return size - 1 - anchor(); }
};

struct ThresholdResult {
    Raster image;
    int threshold = 0;
};

/// sigma = 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8
inline double gaussian_sigma(int ksize) { return 0.3 * ((ksize - 1) * 0.5 - 1.0) + 0.8; }

/// Normalised 1-D Gaussian weights for an odd aperture.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> gaussian_kernel(int ksize) {
    if (ksize < 1 || ksize % 2 == 0) {
        throw InvalidParameter("gaussian kernel size must be odd and positive, got " +
                               std::to_string(ksize));
    }
    const Scalar sigma = static_cast<Scalar>(gaussian_sigma(ksize));
    const int center = ksize / 2;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(ksize);
    for (int i = 0; i < ksize; ++i) {
        const Scalar x = static_cast<Scalar>(i - center);
        w(i) = std::exp(-(x * x) / (Scalar(2) * sigma * sigma));
    }
    return w / w.sum();
}

Raster simple_threshold(const Raster& r, int thresh, int max_value, int type);
ThresholdResult otsu_threshold(const Raster& r, int max_value, int type);
ThresholdResult triangle_threshold(const Raster& r, int max_value, int type);
Raster adaptive_threshold(const Raster& r, int max_value, int adaptive_method,
                          int threshold_type, int block_size, int c);

/// Otsu's threshold alone: argmax of the between-class variance, smallest on ties.
int otsu_level(const Raster& r);
/// Triangle threshold alone.
int triangle_level(const Raster& r);

Raster box_blur(const Raster& r, int ksize, BorderMode border);
Raster gaussian_blur(const Raster& r, int ksize, BorderMode border);
/// Lower median of the window; constant borders count zeros, isolated
/// borders use only in-image cells.
Raster median_blur(const Raster& r, int ksize, BorderMode border = BorderMode::Replicate);
/// Circular footprint of radius d/2; d = 1 is the identity.
Raster bilateral_filter(const Raster& r, int d, double sigma_color, double sigma_space,
                        BorderMode border = BorderMode::Replicate);

Raster erode(const Raster& r, StructuringElement kernel, int iterations, BorderMode border);
Raster dilate(const Raster& r, StructuringElement kernel, int iterations, BorderMode border);
Raster morph_composite(const Raster& r, MorphOp op, StructuringElement kernel, int iterations,
                       BorderMode border);

}  // namespace ocrtune
