#include <gtest/gtest.h>

#include <random>

#include "ocrtune/stats.hpp"
#include "oracles.hpp"

using namespace ocrtune;

namespace {

std::vector<double> diffs_of(std::span<const double> x, std::span<const double> y) {
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i) d.push_back(x[i] - y[i]);
    return d;
}

}  // namespace

TEST(Wilcoxon, AllPositiveSmallSample) {
    const std::vector<double> x = {2, 3, 4, 5, 6}, y = {1, 1, 1, 1, 1};
    const auto r = wilcoxon_signed_rank(x, y, Alternative::Greater);
    EXPECT_DOUBLE_EQ(r.statistic, 15.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 32.0);
    EXPECT_TRUE(r.exact);
    EXPECT_DOUBLE_EQ(wilcoxon_signed_rank(x, y, Alternative::Less).p_value, 1.0);
}

TEST(Wilcoxon, ZeroDifferencesAreDropped) {
    const std::vector<double> x = {1, 2, 3, 9}, y = {1, 2, 3, 4};
    const auto r = wilcoxon_signed_rank(x, y, Alternative::Greater);
    EXPECT_EQ(r.nonzero, 1);
    EXPECT_DOUBLE_EQ(r.p_value, 0.5);
    const auto same = wilcoxon_signed_rank(y, y, Alternative::Greater);
    EXPECT_EQ(same.nonzero, 0);
    EXPECT_DOUBLE_EQ(same.p_value, 1.0);
}

TEST(Wilcoxon, ExactMatchesEnumerationWithTies) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 10;
        std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = static_cast<double>(rng() % 7);
            y[static_cast<std::size_t>(i)] = static_cast<double>(rng() % 7);
        }
        const auto d = diffs_of(x, y);
        for (auto alt : {Alternative::Greater, Alternative::Less}) {
            const auto r = wilcoxon_signed_rank(x, y, alt);
            EXPECT_NEAR(r.p_value, oracle::wilcoxon_enumerated(d, alt == Alternative::Greater), 1e-12);
        }
    }
}

TEST(Wilcoxon, NormalApproximationTracksEnumeration) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 14;
        std::vector<double> x, y;
        for (int i = 0; i < n; ++i) {
            y.push_back(static_cast<double>(rng() % 100));
            const double step = 1.0 + static_cast<double>(rng() % 40);
            x.push_back(y.back() + (rng() % 3 == 0 ? -step : step));
        }
        const auto r = wilcoxon_signed_rank(x, y, Alternative::Greater);
        EXPECT_FALSE(r.exact);
        EXPECT_NEAR(r.p_value, oracle::wilcoxon_enumerated(diffs_of(x, y), true), 0.02);
    }
}

TEST(Wilcoxon, RejectsMismatchedLengths) {
    const std::vector<double> x = {1, 2}, y = {1};
    EXPECT_ANY_THROW(wilcoxon_signed_rank(x, y, Alternative::Greater));
}

TEST(Bonferroni, CapsAtOne) {
    EXPECT_DOUBLE_EQ(bonferroni(0.01, 3), 0.03);
    EXPECT_DOUBLE_EQ(bonferroni(0.4, 3), 1.0);
    EXPECT_DOUBLE_EQ(bonferroni(1.0 / 3.0, 3), 1.0);
    const std::vector<double> ps = {0.001, 0.2};
    EXPECT_EQ(bonferroni(ps, 5), (std::vector<double>{0.005, 1.0}));
    EXPECT_ANY_THROW(bonferroni(ps, 1));
    EXPECT_EQ(pairwise_comparisons(16), 120);
    EXPECT_EQ(pairwise_comparisons(1), 0);
}

TEST(Compare, DirectionAndMarkers) {
    std::vector<double> better, worse;
    for (int i = 0; i < 20; ++i) {
        better.push_back(90.0 + i * 0.5);
        worse.push_back(70.0 + i * 0.3);
    }
    const auto up = compare_paired(better, worse, 1);
    EXPECT_EQ(up.direction, Direction::Better);
    EXPECT_EQ(significance_marker(up), ">>>");
    const auto down = compare_paired(worse, better, 1);
    EXPECT_EQ(down.direction, Direction::Worse);
    EXPECT_EQ(significance_marker(down), "<<<");
    const auto flat = compare_paired(better, better, 3);
    EXPECT_EQ(flat.direction, Direction::NotSignificant);
    EXPECT_EQ(significance_marker(flat), "1.000");
    EXPECT_EQ(direction_name(Direction::NotSignificant), "not-significant");
}

TEST(Compare, MarkerTiers) {
    ComparisonResult c;
    c.direction = Direction::Better;
    c.adjusted_p = 0.03;
    EXPECT_EQ(significance_marker(c), ">");
    c.adjusted_p = 0.005;
    EXPECT_EQ(significance_marker(c), ">>");
    c.direction = Direction::Worse;
    EXPECT_EQ(significance_marker(c), "<<");
    c.direction = Direction::NotSignificant;
    c.adjusted_p = 0.0734;
    EXPECT_EQ(significance_marker(c), "0.073");
}

TEST(Compare, CorrectionCanRemoveSignificance) {
    const std::vector<double> x = {5, 6, 7, 8, 9}, y = {1, 1, 1, 1, 1};
    EXPECT_EQ(compare_paired(x, y, 1).direction, Direction::Better);  // p = 1/32
    EXPECT_EQ(compare_paired(x, y, 2).direction, Direction::NotSignificant);
    EXPECT_DOUBLE_EQ(compare_paired(x, y, 2).adjusted_p, 1.0 / 16.0);
}

TEST(Friedman, NoTiesMatchesRankSumFormula) {
    const std::vector<std::vector<double>> rows = {{1, 2, 3}, {2, 3, 1}, {1, 3, 2}, {1, 2, 3}};
    Eigen::MatrixXd m(4, 3);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const auto r = friedman_test(m);
    EXPECT_NEAR(r.statistic, oracle::friedman_rank_sum(rows), 1e-12);
    EXPECT_NEAR(r.statistic, 3.5, 1e-12);
    EXPECT_EQ(r.documents, 4);
    EXPECT_EQ(r.algorithms, 3);
    EXPECT_NEAR(r.p_value, std::exp(-3.5 / 2), 1e-12);  // chi-square with 2 degrees of freedom
}

TEST(Friedman, TieCorrection) {
    Eigen::MatrixXd m(3, 3);
    m << 1, 1, 2,
         3, 1, 2,
         5, 5, 5;
    // ranks: [1.5,1.5,3], [3,1,2], [2,2,2]; rank sums 6.5, 4.5, 7
    // chi = 12 * sum((R - 6)^2) / (n k (k+1) - sum(t^3 - t) / (k - 1)) = 12*3.5 / (36 - 15) = 2
    EXPECT_NEAR(friedman_test(m).statistic, 2.0, 1e-12);
}

TEST(Friedman, DegenerateAndTooSmall) {
    Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(4, 3, 2.0);
    const auto r = friedman_test(constant);
    EXPECT_DOUBLE_EQ(r.statistic, 0.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    EXPECT_ANY_THROW(friedman_test(Eigen::MatrixXd::Ones(1, 3)));
    EXPECT_ANY_THROW(friedman_test(Eigen::MatrixXd::Ones(3, 1)));
}

TEST(Ranks, AverageTies) {
    Eigen::VectorXd v(5);
    v << 10, 20, 10, 5, 20;
    Eigen::VectorXd expected(5);
    expected << 2.5, 4.5, 2.5, 1, 4.5;
    EXPECT_TRUE(average_ranks(v).isApprox(expected));
}

TEST(Wilcoxon, SixPositiveDifferences) {
    const std::vector<double> x = {1, 2, 3, 4, 5, 6}, y(6, 0.0);
    EXPECT_DOUBLE_EQ(wilcoxon_signed_rank(x, y, Alternative::Greater).p_value, 1.0 / 64.0);
    EXPECT_DOUBLE_EQ(bonferroni(0.01, 10), 0.1);
    EXPECT_DOUBLE_EQ(bonferroni(0.5, 3), 1.0);
}

TEST(Friedman, RankInvariances) {
    std::mt19937 rng(21);
    Eigen::MatrixXd m(6, 4);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = static_cast<double>(rng() % 9) - 4.0;
    const double base = friedman_test(m).statistic;
    EXPECT_NEAR(friedman_test(m.array().cube().matrix()).statistic, base, 1e-12);
    Eigen::MatrixXd permuted(6, 4);
    permuted << m.col(2), m.col(0), m.col(3), m.col(1);
    EXPECT_NEAR(friedman_test(permuted).statistic, base, 1e-12);
}
