#include "ocrtune/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "ocrtune/errors.hpp"

namespace ocrtune {
namespace {

// Sum over tie groups of t^3 - t.
double tie_term(const Eigen::Ref<const Eigen::VectorXd>& values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto t = static_cast<double>(j - i);
        total += t * t * t - t;
        i = j;
    }
    return total;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& values) {
    const auto n = values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
    Eigen::VectorXd ranks(n);
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && values(order[j]) == values(order[i])) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks(order[k]) = rank;
        i = j;
    }
    return ranks;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    Alternative alternative) {
    if (x.size() != y.size()) throw InvalidParameter("paired samples differ in length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult result;
    result.nonzero = static_cast<int>(diffs.size());
    if (diffs.empty()) return result;

    const auto n = static_cast<Eigen::Index>(diffs.size());
    Eigen::VectorXd magnitude(n);
    for (Eigen::Index i = 0; i < n; ++i) magnitude(i) = std::abs(diffs[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd ranks = average_ranks(magnitude);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (diffs[static_cast<std::size_t>(i)] > 0.0) result.statistic += ranks(i);
    }

    if (n <= kWilcoxonExactLimit) {
        // Average ranks are multiples of 1/2, so doubled ranks are integers and
        // the null distribution of 2*W+ is a subset-sum count.
        std::vector<int> doubled(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) doubled[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(2.0 * ranks(i)));
        const int max_sum = std::accumulate(doubled.begin(), doubled.end(), 0);
        std::vector<double> ways(static_cast<std::size_t>(max_sum) + 1, 0.0);
        ways[0] = 1.0;
        for (int r : doubled) {
            for (int s = max_sum; s >= r; --s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - r)];
        }
        const auto observed = static_cast<int>(std::lround(2.0 * result.statistic));
        double tail = 0.0;
        for (int s = 0; s <= max_sum; ++s) {
            const bool in_tail = alternative == Alternative::Greater ? s >= observed : s <= observed;
            if (in_tail) tail += ways[static_cast<std::size_t>(s)];
        }
        result.p_value = std::min(1.0, tail / std::ldexp(1.0, static_cast<int>(n)));
        result.exact = true;
        return result;
    }

    const auto nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    const double variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term(magnitude) / 48.0;
    result.exact = false;
    if (variance <= 0.0) return result;
    const double sd = std::sqrt(variance);
    if (alternative == Alternative::Greater) {
        result.p_value = normal_upper_tail((result.statistic - mean - 0.5) / sd);
    } else {
        result.p_value = normal_upper_tail((mean - result.statistic - 0.5) / sd);
    }
    return result;
}

double bonferroni(double p, int comparisons) {
    if (comparisons < 1) throw InvalidParameter("comparison count must be >= 1");
    return std::min(1.0, p * comparisons);
}

std::vector<double> bonferroni(std::span<const double> p_values, int comparisons) {
    if (static_cast<std::size_t>(comparisons) < p_values.size()) {
        throw InvalidParameter("comparison count is smaller than the number of tests");
    }
    std::vector<double> out;
    out.reserve(p_values.size());
    for (double p : p_values) out.push_back(bonferroni(p, comparisons));
    return out;
}

std::string_view direction_name(Direction d) {
    switch (d) {
        case Direction::Better: return "better";
        case Direction::Worse: return "worse";
        case Direction::NotSignificant: break;
    }
    return "not-significant";
}

ComparisonResult compare_paired(std::span<const double> x, std::span<const double> y, int comparisons,
                                double alpha) {
    const auto greater = wilcoxon_signed_rank(x, y, Alternative::Greater);
    const auto less = wilcoxon_signed_rank(x, y, Alternative::Less);
    const double adj_greater = bonferroni(greater.p_value, comparisons);
    const double adj_less = bonferroni(less.p_value, comparisons);

    ComparisonResult c;
    c.statistic = greater.statistic;
    if (adj_greater < alpha) {
        c.p_value = greater.p_value;
        c.adjusted_p = adj_greater;
        c.direction = Direction::Better;
    } else if (adj_less < alpha) {
        c.p_value = less.p_value;
        c.adjusted_p = adj_less;
        c.direction = Direction::Worse;
    } else {
        c.p_value = std::min(greater.p_value, less.p_value);
        c.adjusted_p = bonferroni(c.p_value, comparisons);
    }
    return c;
}

std::string significance_marker(const ComparisonResult& c) {
    if (c.direction == Direction::NotSignificant) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", c.adjusted_p);
        return buf;
    }
    const int tier = c.adjusted_p < 0.001 ? 3 : c.adjusted_p < 0.01 ? 2 : 1;
    return std::string(static_cast<std::size_t>(tier), c.direction == Direction::Better ? '>' : '<');
}

int pairwise_comparisons(int items) { return items * (items - 1) / 2; }

FriedmanResult friedman_test(const Eigen::Ref<const Eigen::MatrixXd>& values) {
    FriedmanResult result;
    result.documents = static_cast<int>(values.rows());
    result.algorithms = static_cast<int>(values.cols());
    if (values.rows() < 2 || values.cols() < 2) {
        throw InvalidParameter("the Friedman test needs at least 2 documents and 2 algorithms");
    }
    const auto n = static_cast<double>(values.rows());
    const auto k = static_cast<double>(values.cols());

    Eigen::RowVectorXd rank_sums = Eigen::RowVectorXd::Zero(values.cols());
    double ties = 0.0;
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        const Eigen::VectorXd row = values.row(r).transpose();
        rank_sums += average_ranks(row).transpose();
        ties += tie_term(row);
    }
    const double correction = 1.0 - ties / (n * (k * k * k - k));
    if (correction <= 0.0) return result;

    const Eigen::RowVectorXd centred = rank_sums.array() / n - (k + 1.0) / 2.0;
    result.statistic = 12.0 * n / (k * (k + 1.0)) * centred.squaredNorm() / correction;
    if (result.statistic <= 0.0) {
        result.statistic = 0.0;
        return result;
    }
    const boost::math::chi_squared dist(k - 1.0);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    return result;
}

}  // namespace ocrtune
