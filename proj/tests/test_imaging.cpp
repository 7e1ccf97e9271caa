#include <gtest/gtest.h>

#include <random>

#include "ocrtune/imaging.hpp"
#include "oracles.hpp"

using namespace ocrtune;

namespace {

Raster random_raster(std::mt19937& rng, int w, int h) {
    Raster r(w, h);
    for (auto& p : r.data()) p = static_cast<std::uint8_t>(rng() % 256);
    return r;
}

// Mostly binary page-like raster: light background with dark blobs and noise.
Raster page_like(std::mt19937& rng, int w, int h) {
    Raster r(w, h, 230);
    for (auto& p : r.data()) {
        const auto roll = rng() % 10;
        if (roll < 3) p = static_cast<std::uint8_t>(20 + rng() % 40);
        else if (roll == 3) p = static_cast<std::uint8_t>(rng() % 256);
    }
    return r;
}

const std::vector<BorderMode> kFilterModes = {BorderMode::Constant, BorderMode::Replicate, BorderMode::Reflect,
                                              BorderMode::Reflect101, BorderMode::Isolated};

}  // namespace

TEST(BorderIndex, MatchesReferenceExtrapolation) {
    // n = 4, abcd
    EXPECT_EQ(border_index(-1, 4, BorderMode::Replicate), 0);
    EXPECT_EQ(border_index(5, 4, BorderMode::Replicate), 3);
    EXPECT_EQ(border_index(-1, 4, BorderMode::Reflect), 0);
    EXPECT_EQ(border_index(-2, 4, BorderMode::Reflect), 1);
    EXPECT_EQ(border_index(4, 4, BorderMode::Reflect), 3);
    EXPECT_EQ(border_index(-1, 4, BorderMode::Reflect101), 1);
    EXPECT_EQ(border_index(4, 4, BorderMode::Reflect101), 2);
    EXPECT_FALSE(border_index(-1, 4, BorderMode::Constant));
    EXPECT_FALSE(border_index(4, 4, BorderMode::Isolated));
    EXPECT_EQ(border_index(-3, 1, BorderMode::Reflect101), 0);
}

TEST(BorderIndex, AgreesWithOracleFarOutside) {
    for (int n = 1; n <= 5; ++n) {
        for (int p = -12; p < n + 12; ++p) {
            for (int mode = 0; mode <= 4; ++mode) {
                const auto got = border_index(p, n, static_cast<BorderMode>(mode));
                EXPECT_EQ(got.value_or(-1), oracle::source_index(p, n, mode)) << n << " " << p << " " << mode;
            }
        }
    }
}

TEST(BorderMode, CodeValidation) {
    EXPECT_EQ(border_mode_from_code(3), BorderMode::Reflect101);
    EXPECT_THROW(border_mode_from_code(5), InvalidParameter);
}

TEST(SimpleThreshold, StrictComparison) {
    const std::vector<int> v = {10, 127, 128, 200};
    const auto r = Raster::from_values(4, 1, v);
    EXPECT_EQ(simple_threshold(r, 127, 255, 0).values(), (std::vector<int>{0, 0, 255, 255}));
    EXPECT_EQ(simple_threshold(r, 127, 255, 1).values(), (std::vector<int>{255, 255, 0, 0}));
    EXPECT_EQ(simple_threshold(r, 127, 255, 2).values(), (std::vector<int>{10, 127, 127, 127}));
    EXPECT_EQ(simple_threshold(r, 127, 255, 3).values(), (std::vector<int>{0, 0, 128, 200}));
    EXPECT_EQ(simple_threshold(r, 127, 255, 4).values(), (std::vector<int>{10, 127, 0, 0}));
}

TEST(SimpleThreshold, AllWhiteAtZeroThreshold) {
    Raster r(3, 3, 255);
    EXPECT_EQ(simple_threshold(r, 0, 255, 0), r);
    EXPECT_THROW(simple_threshold(r, 256, 255, 0), InvalidParameter);
    EXPECT_THROW(simple_threshold(r, 0, 255, 5), InvalidParameter);
}

TEST(Otsu, BimodalSplitsBetweenModes) {
    std::vector<int> v(50, 20);
    v.resize(100, 220);
    const auto r = Raster::from_values(10, 10, v);
    const auto res = otsu_threshold(r, 255, 0);
    EXPECT_GE(res.threshold, 20);
    EXPECT_LT(res.threshold, 220);
    EXPECT_EQ(res.image(0, 0), 0);
    EXPECT_EQ(res.image(9, 9), 255);
}

TEST(Otsu, ConstantImageGivesThresholdZero) {
    const Raster r(4, 4, 42);
    const auto res = otsu_threshold(r, 255, 0);
    EXPECT_EQ(res.threshold, 0);
    EXPECT_EQ(res.image, Raster(4, 4, 255));
}

TEST(Otsu, MatchesExhaustiveScan) {
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        const auto r = (i % 2) ? random_raster(rng, 16, 16) : page_like(rng, 16, 16);
        EXPECT_EQ(otsu_level(r), oracle::otsu_scan(r));
    }
}

TEST(Triangle, MatchesGeometricScan) {
    std::mt19937 rng(8);
    for (int i = 0; i < 60; ++i) {
        const auto r = (i % 2) ? random_raster(rng, 16, 16) : page_like(rng, 16, 16);
        EXPECT_EQ(triangle_level(r), oracle::triangle_scan(r));
    }
}

TEST(Triangle, ConstantImageThresholdIsThePeak) {
    const Raster r(5, 5, 90);
    EXPECT_EQ(triangle_threshold(r, 255, 0).threshold, 90);
}

TEST(Triangle, SkewedHistogramPicksTheKnee) {
    // Peak at 200 with a long tail toward dark values.
    std::vector<int> v;
    for (int i = 0; i < 60; ++i) v.push_back(200);
    for (int i = 0; i < 20; ++i) v.push_back(190);
    for (int i = 0; i < 4; ++i) v.push_back(100);
    for (int i = 0; i < 16; ++i) v.push_back(10 + i);
    const auto r = Raster::from_values(10, 10, v);
    const int t = triangle_level(r);
    EXPECT_LT(t, 200);
    EXPECT_GE(t, 10);
    EXPECT_EQ(t, oracle::triangle_scan(r));
}

TEST(AdaptiveThreshold, UniformImageMean) {
    const Raster r(6, 6, 100);
    // p > mean - c with c = 2 holds everywhere.
    EXPECT_EQ(adaptive_threshold(r, 255, 0, 0, 3, 2), Raster(6, 6, 255));
    EXPECT_EQ(adaptive_threshold(r, 255, 1, 0, 5, 2), Raster(6, 6, 255));
    EXPECT_EQ(adaptive_threshold(r, 255, 0, 1, 3, 2), Raster(6, 6, 0));
}

TEST(AdaptiveThreshold, DarkDotOnLightBackground) {
    Raster r(7, 7, 200);
    r(3, 3) = 10;
    const auto out = adaptive_threshold(r, 255, 0, 0, 3, 2);
    EXPECT_EQ(out(3, 3), 0);
    EXPECT_EQ(out(0, 0), 255);
}

TEST(AdaptiveThreshold, MeanMethodAgreesWithDirectWindow) {
    std::mt19937 rng(14);
    for (int i = 0; i < 20; ++i) {
        const auto r = random_raster(rng, 11, 9);
        const int block = 3 + 2 * static_cast<int>(rng() % 3);
        const int c = static_cast<int>(rng() % 20);
        const auto out = adaptive_threshold(r, 255, 0, 0, block, c);
        for (int y = 0; y < r.height(); ++y) {
            for (int x = 0; x < r.width(); ++x) {
                long long sum = 0;
                for (int v : oracle::window(r, y, x, block, -(block / 2), 1)) sum += v;
                const double mean = static_cast<double>(sum) / (block * block);
                EXPECT_EQ(out(y, x), r(y, x) > mean - c ? 255 : 0);
            }
        }
    }
}

TEST(AdaptiveThreshold, EvenBlockSizeIsAConstraintViolation) {
    const Raster r(4, 4, 1);
    EXPECT_THROW(adaptive_threshold(r, 255, 0, 0, 4, 2), ConstraintViolation);
    EXPECT_THROW(adaptive_threshold(r, 255, 2, 0, 5, 2), InvalidParameter);
}

TEST(GaussianKernel, NormalisedAndMatchesSigmaFormula) {
    EXPECT_DOUBLE_EQ(gaussian_kernel(1)(0), 1.0);
    for (int k : {3, 5, 7}) EXPECT_NEAR(gaussian_kernel(k).sum(), 1.0, 1e-12);
    const auto w = gaussian_kernel(3);
    const double sigma = 0.3 * ((3 - 1) * 0.5 - 1) + 0.8;
    const double side = std::exp(-1.0 / (2 * sigma * sigma));
    EXPECT_NEAR(w(0), side / (1 + 2 * side), 1e-15);
    EXPECT_NEAR(w(1), 1 / (1 + 2 * side), 1e-15);
    EXPECT_THROW(gaussian_kernel(4), InvalidParameter);
}

TEST(Smoothing, IdentityAtUnitAperture) {
    std::mt19937 rng(1);
    const auto r = random_raster(rng, 9, 7);
    EXPECT_EQ(box_blur(r, 1, BorderMode::Reflect101), r);
    EXPECT_EQ(gaussian_blur(r, 1, BorderMode::Reflect101), r);
    EXPECT_EQ(median_blur(r, 1), r);
    EXPECT_EQ(bilateral_filter(r, 1, 75, 75), r);
}

TEST(Smoothing, ConstantImagesAreFixpoints) {
    const Raster r(8, 6, 143);
    for (auto mode : {BorderMode::Replicate, BorderMode::Reflect, BorderMode::Reflect101, BorderMode::Isolated}) {
        EXPECT_EQ(box_blur(r, 5, mode), r);
        EXPECT_EQ(gaussian_blur(r, 5, mode), r);
        EXPECT_EQ(median_blur(r, 5, mode), r);
        EXPECT_EQ(bilateral_filter(r, 7, 30, 30, mode), r);
    }
}

TEST(Smoothing, BoxBlurThreeByThreeCentre) {
    const std::vector<int> v = {10, 20, 30, 40, 50, 60, 70, 80, 90};
    const auto r = Raster::from_values(3, 3, v);
    EXPECT_EQ(box_blur(r, 3, BorderMode::Replicate)(1, 1), 50);
}

TEST(Smoothing, MedianRemovesImpulse) {
    Raster r(5, 5, 100);
    r(2, 2) = 255;
    EXPECT_EQ(median_blur(r, 3), Raster(5, 5, 100));
    EXPECT_THROW(median_blur(r, 4), InvalidParameter);
}

TEST(Smoothing, GaussianRejectsEvenAperture) {
    EXPECT_THROW(gaussian_blur(Raster(3, 3), 4, BorderMode::Replicate), InvalidParameter);
}

TEST(Smoothing, FiltersMatchDirectWindowOracle) {
    std::mt19937 rng(21);
    for (auto mode : kFilterModes) {
        const int code = static_cast<int>(mode);
        for (int i = 0; i < 8; ++i) {
            const auto r = random_raster(rng, 10 + static_cast<int>(rng() % 4), 9 + static_cast<int>(rng() % 4));
            const int k = 3 + 2 * static_cast<int>(rng() % 3);
            EXPECT_EQ(box_blur(r, k, mode), oracle::box(r, k, code));
            EXPECT_EQ(gaussian_blur(r, k, mode), oracle::gaussian(r, k, code));
            EXPECT_EQ(median_blur(r, k, mode), oracle::median(r, k, code));
            EXPECT_EQ(bilateral_filter(r, k, 40, 20, mode), oracle::bilateral(r, k, 40, 20, code));
        }
    }
}

TEST(Smoothing, EvenBoxKernelMatchesOracle) {
    std::mt19937 rng(23);
    const auto r = random_raster(rng, 9, 8);
    for (int mode : {1, 2, 3}) {
        EXPECT_EQ(box_blur(r, 4, static_cast<BorderMode>(mode)), oracle::box(r, 4, mode));
    }
}

TEST(Morphology, ErodeDilateExamples) {
    Raster r(3, 3, 0);
    r(1, 1) = 255;
    const StructuringElement k3{3};
    EXPECT_EQ(erode(r, k3, 1, BorderMode::Replicate), Raster(3, 3, 0));
    EXPECT_EQ(dilate(r, k3, 1, BorderMode::Replicate), Raster(3, 3, 255));
    EXPECT_EQ(erode(r, StructuringElement{1}, 4, BorderMode::Replicate), r);
    EXPECT_EQ(erode(Raster(4, 4, 9), k3, 2, BorderMode::Constant), Raster(4, 4, 9));
    EXPECT_THROW(erode(r, k3, 0, BorderMode::Replicate), InvalidParameter);
}

TEST(Morphology, OpeningRemovesIsolatedWhitePixel) {
    Raster r(7, 7, 0);
    r(3, 3) = 255;
    EXPECT_EQ(morph_composite(r, MorphOp::Opening, {3}, 1, BorderMode::Reflect101), Raster(7, 7, 0));
}

TEST(Morphology, MatchesWindowOracle) {
    std::mt19937 rng(31);
    for (auto mode : kFilterModes) {
        const int code = static_cast<int>(mode);
        for (int i = 0; i < 10; ++i) {
            const auto r = random_raster(rng, 12, 12);
            const int k = 2 + static_cast<int>(rng() % 5);
            const int iterations = 1 + static_cast<int>(rng() % 2);
            EXPECT_EQ(erode(r, {k}, iterations, mode), oracle::extremum(r, k, iterations, code, true));
            EXPECT_EQ(dilate(r, {k}, iterations, mode), oracle::extremum(r, k, iterations, code, false));
        }
    }
}

TEST(Morphology, AlgebraicProperties) {
    std::mt19937 rng(41);
    for (int i = 0; i < 30; ++i) {
        const auto r = random_raster(rng, 10, 8);
        const StructuringElement k{3 + 2 * static_cast<int>(rng() % 2)};
        for (auto mode : {BorderMode::Replicate, BorderMode::Reflect, BorderMode::Reflect101, BorderMode::Constant}) {
            const auto open = morph_composite(r, MorphOp::Opening, k, 1, mode);
            const auto close = morph_composite(r, MorphOp::Closing, k, 1, mode);
            EXPECT_EQ(morph_composite(open, MorphOp::Opening, k, 1, mode), open);
            EXPECT_EQ(morph_composite(close, MorphOp::Closing, k, 1, mode), close);
            EXPECT_EQ(dilate(r, k, 1, mode), invert(erode(invert(r), k, 1, mode)));
        }
        const auto e = erode(r, k, 1, BorderMode::Replicate);
        const auto d = dilate(r, k, 1, BorderMode::Reflect);
        EXPECT_TRUE((e.pixels() <= r.pixels()).all());
        EXPECT_TRUE((r.pixels() <= d.pixels()).all());
    }
}

TEST(Morphology, EvenKernelOpeningIsStillIdempotent) {
    std::mt19937 rng(43);
    for (int i = 0; i < 40; ++i) {
        const auto r = random_raster(rng, 9, 11);
        const StructuringElement k{2 + 2 * static_cast<int>(rng() % 3)};
        for (int code = 0; code <= 4; ++code) {
            const auto mode = static_cast<BorderMode>(code);
            const auto open = morph_composite(r, MorphOp::Opening, k, 1, mode);
            const auto close = morph_composite(r, MorphOp::Closing, k, 1, mode);
            EXPECT_EQ(morph_composite(open, MorphOp::Opening, k, 1, mode), open) << k.size << " " << code;
            EXPECT_EQ(morph_composite(close, MorphOp::Closing, k, 1, mode), close) << k.size << " " << code;
            // dcb|abcd mirrors about the edge pixel, so an even window can pull in an interior value there.
            if (mode == BorderMode::Reflect101) continue;
            EXPECT_TRUE((open.pixels() <= r.pixels()).all()) << k.size << " " << code;
            EXPECT_TRUE((r.pixels() <= close.pixels()).all()) << k.size << " " << code;
        }
    }
}

TEST(Morphology, CompositesOfConstantsAreZero) {
    const Raster r(6, 5, 77);
    for (auto op : {MorphOp::TopHat, MorphOp::BlackHat, MorphOp::Gradient}) {
        EXPECT_EQ(morph_composite(r, op, {5}, 2, BorderMode::Reflect101), Raster(6, 5, 0));
    }
}

TEST(Morphology, GradientIsDilateMinusErode) {
    std::mt19937 rng(43);
    const auto r = random_raster(rng, 9, 9);
    const auto g = morph_composite(r, MorphOp::Gradient, {3}, 1, BorderMode::Replicate);
    const auto d = dilate(r, {3}, 1, BorderMode::Replicate);
    const auto e = erode(r, {3}, 1, BorderMode::Replicate);
    EXPECT_EQ(g.values()[40], d.values()[40] - e.values()[40]);
}

TEST(Morphology, EvenKernelAnchorsAtHalf) {
    Raster r(5, 5, 0);
    r(2, 2) = 255;
    // Footprint offsets for k=2 are {-1, 0}: the pixel spreads down and right.
    const auto d = dilate(r, {2}, 1, BorderMode::Constant);
    EXPECT_EQ(d(2, 2), 255);
    EXPECT_EQ(d(3, 3), 255);
    EXPECT_EQ(d(1, 1), 0);
}

TEST(Operators, PreserveDimensions) {
    std::mt19937 rng(2);
    const auto r = random_raster(rng, 13, 6);
    for (const auto& out : {box_blur(r, 5, BorderMode::Reflect101), gaussian_blur(r, 7, BorderMode::Constant),
                            median_blur(r, 3), bilateral_filter(r, 9, 75, 75),
                            erode(r, {4}, 2, BorderMode::Isolated), otsu_threshold(r, 255, 1).image,
                            adaptive_threshold(r, 255, 1, 1, 11, 2)}) {
        EXPECT_EQ(out.width(), 13);
        EXPECT_EQ(out.height(), 6);
    }
}

TEST(ReferenceCases, SmallRows) {
    const std::vector<int> ramp = {0, 0, 255};
    EXPECT_EQ(box_blur(Raster::from_values(3, 1, ramp), 3, BorderMode::Replicate).values(),
              (std::vector<int>{0, 85, 170}));
    const std::vector<int> spike = {0, 255, 0};
    EXPECT_EQ(median_blur(Raster::from_values(3, 1, spike), 3)(0, 1), 0);

    std::vector<int> halves(8, 0);
    halves.resize(16, 255);
    EXPECT_EQ(otsu_level(Raster::from_values(4, 4, halves)), 0);

    std::vector<int> skew(4, 10);
    skew.resize(16, 200);
    const auto r = Raster::from_values(4, 4, skew);
    EXPECT_EQ(otsu_level(r), oracle::otsu_scan(r));
    EXPECT_EQ(triangle_level(r), oracle::triangle_scan(r));
}

TEST(ReferenceCases, BilateralPreservesEdgesBetterThanBox) {
    const std::vector<int> step = {0, 0, 255, 255};
    const auto r = Raster::from_values(4, 1, step);
    const auto bilateral = bilateral_filter(r, 3, 10, 10);
    const auto box = box_blur(r, 3, BorderMode::Replicate);
    for (int x = 1; x <= 2; ++x) {
        EXPECT_LT(std::abs(bilateral(0, x) - r(0, x)), std::abs(box(0, x) - r(0, x)));
    }
}

TEST(ReferenceCases, TriangleConstantImageIsAllZero) {
    const auto res = triangle_threshold(Raster(3, 3, 42), 255, 0);
    EXPECT_EQ(res.image, Raster(3, 3, 0));
}
