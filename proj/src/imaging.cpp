#include "ocrtune/imaging.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

namespace ocrtune {
namespace {

void check_range(const char* name, int value, int lo, int hi) {
    if (value < lo || value > hi) {
        throw InvalidParameter(std::string(name) + " must be in [" + std::to_string(lo) + "," +
                               std::to_string(hi) + "], got " + std::to_string(value));
    }
}

// Source index for every padded position of a line of length n whose windows
// span offsets [lo, hi] around each output position; -1 marks "no source".
// Output position p reads padded positions [p, p + hi - lo].
std::vector<int> padded_indices(int n, int lo, int hi, BorderMode mode) {
    std::vector<int> idx(static_cast<std::size_t>(n + hi - lo));
    for (int q = lo; q < n + hi; ++q) {
        const auto mapped = border_index(q, n, mode);
        idx[static_cast<std::size_t>(q - lo)] = mapped ? *mapped : -1;
    }
    return idx;
}

std::uint8_t apply_threshold(std::uint8_t v, int thresh, int max_value, ThresholdType type) {
    const bool above = v > thresh;
    switch (type) {
        case ThresholdType::Binary: return above ? static_cast<std::uint8_t>(max_value) : 0;
        case ThresholdType::BinaryInv: return above ? 0 : static_cast<std::uint8_t>(max_value);
        case ThresholdType::Trunc: return above ? static_cast<std::uint8_t>(thresh) : v;
        case ThresholdType::ToZero: return above ? v : 0;
        case ThresholdType::ToZeroInv: return above ? 0 : v;
    }
    return v;
}

std::array<std::int64_t, 256> histogram(const Raster& r) {
    std::array<std::int64_t, 256> h{};
    for (auto v : r.data()) ++h[v];
    return h;
}

// Separable weighted filter over double samples. With `renormalise` the
// in-image weights of each window are rescaled to sum to one.
Eigen::ArrayXXd separable_filter(const Eigen::ArrayXXd& src, const Eigen::VectorXd& weights,
                                 int lo, BorderMode border, bool renormalise) {
    const int h = static_cast<int>(src.rows());
    const int w = static_cast<int>(src.cols());
    const int k = static_cast<int>(weights.size());
    const int hi = lo + k - 1;

    Eigen::ArrayXXd tmp(h, w);
    const auto px = padded_indices(w, lo, hi, border);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, norm = 0.0;
            for (int i = 0; i < k; ++i) {
                const int s = px[static_cast<std::size_t>(x + i)];
                if (s < 0) continue;
                acc += weights(i) * src(y, s);
                norm += weights(i);
            }
            tmp(y, x) = renormalise ? acc / norm : acc;
        }
    }

    Eigen::ArrayXXd out(h, w);
    const auto py = padded_indices(h, lo, hi, border);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            double acc = 0.0, norm = 0.0;
            for (int i = 0; i < k; ++i) {
                const int s = py[static_cast<std::size_t>(y + i)];
                if (s < 0) continue;
                acc += weights(i) * tmp(s, x);
                norm += weights(i);
            }
            out(y, x) = renormalise ? acc / norm : acc;
        }
    }
    return out;
}

// Running window extremum of one padded line using a monotone deque.
// `better(a, b)` is true when a should replace b as the extremum.
template <typename Better>
void line_extremum(const std::vector<int>& padded, int window, std::span<std::uint8_t> out,
                   Better better) {
    std::deque<int> dq;
    const int n = static_cast<int>(padded.size());
    for (int q = 0; q < n; ++q) {
        while (!dq.empty() && !better(padded[static_cast<std::size_t>(dq.back())],
                                      padded[static_cast<std::size_t>(q)]) ) {
            dq.pop_back();
        }
        dq.push_back(q);
        const int p = q - window + 1;
        if (p < 0) continue;
        if (dq.front() < p) dq.pop_front();
        out[static_cast<std::size_t>(p)] =
            static_cast<std::uint8_t>(padded[static_cast<std::size_t>(dq.front())]);
    }
}

// One erosion (take_min) or dilation pass with a rectangular footprint.
// Cells without a source pixel take the neutral value of the operation.
// `reflected` mirrors the footprint through the anchor, which only matters for even sizes.
Raster morph_pass(const Raster& r, StructuringElement kernel, BorderMode border, bool take_min,
                  bool reflected = false) {
    const int h = r.height(), w = r.width(), k = kernel.size;
    const int lo = reflected ? -kernel.last_offset() : kernel.first_offset();
    const int hi = reflected ? -kernel.first_offset() : kernel.last_offset();
    const int neutral = take_min ? 255 : 0;
    // Keep the earlier element unless the new one is strictly more extreme.
    auto keep_old = [take_min](int old_v, int new_v) {
        return take_min ? old_v < new_v : old_v > new_v;
    };

    Raster tmp(w, h);
    const auto px = padded_indices(w, lo, hi, border);
    std::vector<int> line(px.size());
    std::vector<std::uint8_t> out_line(static_cast<std::size_t>(std::max(w, h)));
    for (int y = 0; y < h; ++y) {
        for (std::size_t q = 0; q < px.size(); ++q) line[q] = px[q] < 0 ? neutral : r(y, px[q]);
        line_extremum(line, k, std::span(out_line.data(), static_cast<std::size_t>(w)), keep_old);
        for (int x = 0; x < w; ++x) tmp(y, x) = out_line[static_cast<std::size_t>(x)];
    }

    Raster out(w, h);
    const auto py = padded_indices(h, lo, hi, border);
    line.assign(py.size(), 0);
    for (int x = 0; x < w; ++x) {
        for (std::size_t q = 0; q < py.size(); ++q) line[q] = py[q] < 0 ? neutral : tmp(py[q], x);
        line_extremum(line, k, std::span(out_line.data(), static_cast<std::size_t>(h)), keep_old);
        for (int y = 0; y < h; ++y) out(y, x) = out_line[static_cast<std::size_t>(y)];
    }
    return out;
}

Raster saturating_difference(const Raster& a, const Raster& b) {
    PixelArray diff =
        (a.pixels().cast<int>() - b.pixels().cast<int>()).max(0).cast<std::uint8_t>();
    return Raster(std::move(diff));
}

void check_morph_args(StructuringElement kernel, int iterations) {
    if (kernel.size < 1) throw InvalidParameter("structuring element size must be >= 1");
    if (iterations < 1) throw InvalidParameter("iterations must be >= 1");
}

Raster morph_repeat(const Raster& r, StructuringElement kernel, int iterations, BorderMode border, bool take_min,
                    bool reflected) {
    check_morph_args(kernel, iterations);
    if (kernel.size == 1) return r;
    Raster out = r;
    for (int i = 0; i < iterations; ++i) out = morph_pass(out, kernel, border, take_min, reflected);
    return out;
}

}  // namespace

BorderMode border_mode_from_code(int code) {
    check_range("borderType", code, 0, 4);
    return static_cast<BorderMode>(code);
}

std::optional<int> border_index(int p, int n, BorderMode mode) {
    if (p >= 0 && p < n) return p;
    switch (mode) {
        case BorderMode::Constant:
        case BorderMode::Isolated:
            return std::nullopt;
        case BorderMode::Replicate:
            return std::clamp(p, 0, n - 1);
        case BorderMode::Reflect:
        case BorderMode::Reflect101: {
            if (n == 1) return 0;
            const int delta = mode == BorderMode::Reflect101 ? 1 : 0;
            do {
                p = p < 0 ? -p - 1 + delta : n - 1 - (p - n) - delta;
            } while (p < 0 || p >= n);
            return p;
        }
    }
    return std::nullopt;
}

Raster simple_threshold(const Raster& r, int thresh, int max_value, int type) {
    check_range("thresh", thresh, 0, 255);
    check_range("maxValue", max_value, 0, 255);
    check_range("type", type, 0, 4);
    const auto t = static_cast<ThresholdType>(type);
    Raster out(r.width(), r.height());
    auto src = r.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = apply_threshold(src[i], thresh, max_value, t);
    return out;
}

int otsu_level(const Raster& r) {
    const auto hist = histogram(r);
    std::int64_t total = 0, total_sum = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[v];
        total_sum += v * hist[v];
    }
    // omega0 * omega1 * (mu0 - mu1)^2 == (S0 * N - S * n0)^2 / (N^2 * n0 * n1);
    // the constant N^2 is dropped.
    std::int64_t n0 = 0, s0 = 0;
    long double best = -1.0L;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += t * hist[t];
        const std::int64_t n1 = total - n0;
        long double var = 0.0L;
        if (n0 > 0 && n1 > 0) {
            const long double diff = static_cast<long double>(s0) * total -
                                     static_cast<long double>(total_sum) * n0;
            var = diff * diff / (static_cast<long double>(n0) * n1);
        }
        if (var > best) {
            best = var;
            best_t = t;
        }
    }
    return best_t;
}

ThresholdResult otsu_threshold(const Raster& r, int max_value, int type) {
    const int t = otsu_level(r);
    return {simple_threshold(r, t, max_value, type), t};
}

int triangle_level(const Raster& r) {
    const auto hist = histogram(r);
    int left = 0, right = 255, peak = 0;
    while (hist[left] == 0) ++left;
    while (hist[right] == 0) --right;
    for (int v = 0; v < 256; ++v) {
        if (hist[v] > hist[peak]) peak = v;
    }
    const int far = (peak - left > right - peak) ? left : right;
    if (far == peak) return peak;

    // Signed depth of each bin below the chord peak -> far, scaled by |dx|.
    const std::int64_t dx = far - peak;
    const std::int64_t dy = hist[far] - hist[peak];
    const std::int64_t sign = dx > 0 ? 1 : -1;
    const int step = static_cast<int>(sign);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    int best_bin = peak;
    for (int b = peak; b != far + step; b += step) {
        const std::int64_t depth = sign * ((hist[peak] - hist[b]) * dx + dy * (b - peak));
        if (depth > best) {
            best = depth;
            best_bin = b;
        }
    }
    return best_bin;
}

ThresholdResult triangle_threshold(const Raster& r, int max_value, int type) {
    const int t = triangle_level(r);
    return {simple_threshold(r, t, max_value, type), t};
}

Raster adaptive_threshold(const Raster& r, int max_value, int adaptive_method,
                          int threshold_type, int block_size, int c) {
    check_range("maxValue", max_value, 0, 255);
    check_range("adaptiveMethod", adaptive_method, 0, 1);
    check_range("thresholdType", threshold_type, 0, 1);
    if (block_size % 2 == 0) {
        throw ConstraintViolation("blockSize must be odd, got " + std::to_string(block_size));
    }
    if (block_size < 3) throw InvalidParameter("blockSize must be >= 3");

    const int h = r.height(), w = r.width();
    const bool inverted = threshold_type == 1;
    const auto hi_value = static_cast<std::uint8_t>(max_value);
    Raster out(w, h);

    if (static_cast<AdaptiveMethod>(adaptive_method) == AdaptiveMethod::Mean) {
        // Integer window sums keep the strict comparison exact:
        // p > sum / k^2 - c  <=>  p * k^2 > sum - c * k^2.
        const int lo = -(block_size / 2), hi = block_size / 2;
        const auto px = padded_indices(w, lo, hi, BorderMode::Replicate);
        const auto py = padded_indices(h, lo, hi, BorderMode::Replicate);
        Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> rowsum(h, w);
        for (int y = 0; y < h; ++y) {
            std::int64_t acc = 0;
            for (int q = 0; q < block_size; ++q) acc += r(y, px[static_cast<std::size_t>(q)]);
            for (int x = 0; x < w; ++x) {
                if (x > 0) {
                    acc += r(y, px[static_cast<std::size_t>(x + block_size - 1)]) -
                           r(y, px[static_cast<std::size_t>(x - 1)]);
                }
                rowsum(y, x) = acc;
            }
        }
        const std::int64_t area = static_cast<std::int64_t>(block_size) * block_size;
        for (int x = 0; x < w; ++x) {
            std::int64_t acc = 0;
            for (int q = 0; q < block_size; ++q) acc += rowsum(py[static_cast<std::size_t>(q)], x);
            for (int y = 0; y < h; ++y) {
                if (y > 0) {
                    acc += rowsum(py[static_cast<std::size_t>(y + block_size - 1)], x) -
                           rowsum(py[static_cast<std::size_t>(y - 1)], x);
                }
                const bool above = r(y, x) * area > acc - c * area;
                out(y, x) = (above != inverted) ? hi_value : 0;
            }
        }
        return out;
    }

    const Eigen::VectorXd kernel = gaussian_kernel(block_size);
    const Eigen::ArrayXXd mean = separable_filter(r.pixels().cast<double>(), kernel,
                                                  -(block_size / 2), BorderMode::Replicate, false);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const bool above = r(y, x) > mean(y, x) - c;
            out(y, x) = (above != inverted) ? hi_value : 0;
        }
    }
    return out;
}

Raster box_blur(const Raster& r, int ksize, BorderMode border) {
    if (ksize < 1) throw InvalidParameter("ksize must be >= 1");
    if (ksize == 1) return r;
    const int h = r.height(), w = r.width();
    const int lo = -(ksize / 2), hi = ksize - 1 - ksize / 2;
    // Constant borders contribute zeros but still count; isolated cells do not.
    const bool count_outside = border == BorderMode::Constant;

    const auto px = padded_indices(w, lo, hi, border);
    const auto py = padded_indices(h, lo, hi, border);
    auto window_counts = [&](const std::vector<int>& idx, int n) {
        std::vector<int> counts(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) {
            int c = 0;
            for (int q = 0; q < ksize; ++q) c += (count_outside || idx[static_cast<std::size_t>(p + q)] >= 0);
            counts[static_cast<std::size_t>(p)] = c;
        }
        return counts;
    };
    const auto cx = window_counts(px, w);
    const auto cy = window_counts(py, h);

    Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> rowsum(h, w);
    std::vector<std::int64_t> prefix(px.size() + 1);
    for (int y = 0; y < h; ++y) {
        for (std::size_t q = 0; q < px.size(); ++q) {
            prefix[q + 1] = prefix[q] + (px[q] < 0 ? 0 : r(y, px[q]));
        }
        for (int x = 0; x < w; ++x) {
            rowsum(y, x) = prefix[static_cast<std::size_t>(x + ksize)] - prefix[static_cast<std::size_t>(x)];
        }
    }

    Raster out(w, h);
    prefix.assign(py.size() + 1, 0);
    for (int x = 0; x < w; ++x) {
        for (std::size_t q = 0; q < py.size(); ++q) {
            prefix[q + 1] = prefix[q] + (py[q] < 0 ? 0 : rowsum(py[q], x));
        }
        for (int y = 0; y < h; ++y) {
            const auto sum = prefix[static_cast<std::size_t>(y + ksize)] - prefix[static_cast<std::size_t>(y)];
            const auto count = static_cast<double>(cx[static_cast<std::size_t>(x)]) * cy[static_cast<std::size_t>(y)];
            out(y, x) = saturate_round(static_cast<double>(sum) / count);
        }
    }
    return out;
}

Raster gaussian_blur(const Raster& r, int ksize, BorderMode border) {
    const Eigen::VectorXd kernel = gaussian_kernel(ksize);
    if (ksize == 1) return r;
    const Eigen::ArrayXXd blurred = separable_filter(r.pixels().cast<double>(), kernel,
                                                     -(ksize / 2), border,
                                                     border == BorderMode::Isolated);
    Raster out(r.width(), r.height());
    for (int y = 0; y < r.height(); ++y) {
        for (int x = 0; x < r.width(); ++x) out(y, x) = saturate_round(blurred(y, x));
    }
    return out;
}

Raster median_blur(const Raster& r, int ksize, BorderMode border) {
    if (ksize < 1 || ksize % 2 == 0) {
        throw InvalidParameter("median ksize must be odd and positive, got " + std::to_string(ksize));
    }
    if (ksize == 1) return r;
    const int h = r.height(), w = r.width(), half = ksize / 2;
    const auto px = padded_indices(w, -half, half, border);
    const auto py = padded_indices(h, -half, half, border);
    const bool zero_outside = border == BorderMode::Constant;

    // Sliding column histogram; cells without a source count as 0 for the
    // constant mode and are skipped for the isolated mode.
    std::array<int, 256> hist{};
    int count = 0;
    auto update = [&](int sy, int sx, int delta) {
        if (sy < 0 || sx < 0) {
            if (!zero_outside) return;
            hist[0] += delta;
        } else {
            hist[r(sy, sx)] += delta;
        }
        count += delta;
    };

    Raster out(w, h);
    for (int y = 0; y < h; ++y) {
        hist.fill(0);
        count = 0;
        for (int q = 0; q < ksize; ++q) {
            for (int p = 0; p < ksize; ++p) {
                update(py[static_cast<std::size_t>(y + q)], px[static_cast<std::size_t>(p)], 1);
            }
        }
        for (int x = 0; x < w; ++x) {
            if (x > 0) {
                for (int q = 0; q < ksize; ++q) {
                    const int sy = py[static_cast<std::size_t>(y + q)];
                    update(sy, px[static_cast<std::size_t>(x - 1)], -1);
                    update(sy, px[static_cast<std::size_t>(x + ksize - 1)], 1);
                }
            }
            const int rank = (count - 1) / 2;  // lower median for even counts
            int seen = 0, v = 0;
            while ((seen += hist[static_cast<std::size_t>(v)]) <= rank) ++v;
            out(y, x) = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

Raster bilateral_filter(const Raster& r, int d, double sigma_color, double sigma_space, BorderMode border) {
    if (d < 1) throw InvalidParameter("bilateral diameter must be >= 1");
    if (!(sigma_color > 0.0) || !(sigma_space > 0.0)) {
        throw InvalidParameter("bilateral sigmas must be positive");
    }
    const int radius = d / 2;
    if (radius == 0) return r;

    struct Tap {
        int dy, dx;
        double weight;
    };
    std::vector<Tap> taps;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const int dist2 = dy * dy + dx * dx;
            if (dist2 > radius * radius) continue;
            taps.push_back({dy, dx, std::exp(-dist2 / (2.0 * sigma_space * sigma_space))});
        }
    }
    std::array<double, 256> color_weight{};
    for (int delta = 0; delta < 256; ++delta) {
        color_weight[static_cast<std::size_t>(delta)] = std::exp(-(delta * delta) / (2.0 * sigma_color * sigma_color));
    }

    const int h = r.height(), w = r.width();
    const auto px = padded_indices(w, -radius, radius, border);
    const auto py = padded_indices(h, -radius, radius, border);
    Raster out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int center = r(y, x);
            double acc = 0.0, norm = 0.0;
            for (const auto& tap : taps) {
                const int sy = py[static_cast<std::size_t>(y + tap.dy + radius)];
                const int sx = px[static_cast<std::size_t>(x + tap.dx + radius)];
                int v = 0;
                if (sy < 0 || sx < 0) {
                    if (border != BorderMode::Constant) continue;
                } else {
                    v = r(sy, sx);
                }
                const double wgt = tap.weight * color_weight[static_cast<std::size_t>(std::abs(v - center))];
                acc += wgt * v;
                norm += wgt;
            }
            out(y, x) = saturate_round(acc / norm);
        }
    }
    return out;
}

Raster erode(const Raster& r, StructuringElement kernel, int iterations, BorderMode border) {
    return morph_repeat(r, kernel, iterations, border, true, false);
}

Raster dilate(const Raster& r, StructuringElement kernel, int iterations, BorderMode border) {
    return morph_repeat(r, kernel, iterations, border, false, false);
}

Raster morph_composite(const Raster& r, MorphOp op, StructuringElement kernel, int iterations,
                       BorderMode border) {
    switch (op) {
        // The second step uses the mirrored footprint so even sizes still give a true opening/closing.
        case MorphOp::Opening:
            return morph_repeat(erode(r, kernel, iterations, border), kernel, iterations, border, false, true);
        case MorphOp::Closing:
            return morph_repeat(dilate(r, kernel, iterations, border), kernel, iterations, border, true, true);
        case MorphOp::Gradient:
            return saturating_difference(dilate(r, kernel, iterations, border),
                                         erode(r, kernel, iterations, border));
        case MorphOp::TopHat:
            return saturating_difference(r, morph_composite(r, MorphOp::Opening, kernel, iterations, border));
        case MorphOp::BlackHat:
            return saturating_difference(morph_composite(r, MorphOp::Closing, kernel, iterations, border), r);
    }
    return r;
}

}  // namespace ocrtune
