#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ocrtune {

enum class Alternative { Greater, Less };

/// W+ is the sum of ranks of positive differences x - y.
struct WilcoxonResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int nonzero = 0;
    bool exact = true;
};

/// Largest sample (after dropping zero differences) handled by exact
/// enumeration of sign patterns.
inline constexpr int kWilcoxonExactLimit = 12;

/// One-sided signed-rank test of x against y. Zero differences are dropped
/// and tied magnitudes get average ranks. Exact for n <= 12, otherwise a
/// normal approximation with tie and continuity corrections. All-zero
/// differences give p = 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    Alternative alternative);

double bonferroni(double p, int comparisons);
std::vector<double> bonferroni(std::span<const double> p_values, int comparisons);

enum class Direction { Better, Worse, NotSignificant };
std::string_view direction_name(Direction d);

struct ComparisonResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double adjusted_p = 1.0;
    Direction direction = Direction::NotSignificant;
};

/// Runs both one-sided tests; x is "better" when it is significantly greater
/// than y after correction for `comparisons` tests.
ComparisonResult compare_paired(std::span<const double> x, std::span<const double> y, int comparisons,
                                double alpha = 0.05);

/// ">" / ">>" / ">>>" for better at p < .05 / .01 / .001, "<" tiers for
/// worse, otherwise the adjusted p printed with three decimals.
std::string significance_marker(const ComparisonResult& c);

/// k(k-1)/2.
int pairwise_comparisons(int items);

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int documents = 0;
    int algorithms = 0;
};

/// Rows are documents, columns algorithms. Ranks within rows use averages
/// for ties; the statistic includes the tie correction. Degenerate input
/// (all rows constant) gives statistic 0 and p = 1.
FriedmanResult friedman_test(const Eigen::Ref<const Eigen::MatrixXd>& values);

/// Average 1-based ranks, ascending.
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& values);

}  // namespace ocrtune
