#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ocrtune {

/// Operation counts of one optimal alignment turning the ground truth into
/// the OCR output. Deletions are ground-truth symbols missing from the output.
struct EditScript {
    int insertions = 0;
    int deletions = 0;
    int substitutions = 0;
    int distance = 0;

    bool operator==(const EditScript&) const = default;
};

// Fixed reporting order.
enum class ErrorCategory : int {
    None = 0,
    Del,
    Ins,
    Sub,
    DelIns,
    DelSub,
    InsSub,
    DelInsSub,
};
inline constexpr int kErrorCategoryCount = 8;

std::string_view category_name(ErrorCategory c);
/// Throws NotFound.
ErrorCategory category_from_name(std::string_view name);
ErrorCategory category_of(const EditScript& script);

/// Two-row unit-cost edit distance.
template <typename Seq>
int edit_distance(const Seq& a, const Seq& b) {
    const auto m = b.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

/// Full table plus one backtrace. Ties prefer substitution (or match), then
/// deletion, then insertion.
template <typename Seq>
EditScript edit_script(const Seq& a, const Seq& b) {
    const auto n = static_cast<Eigen::Index>(a.size());
    const auto m = static_cast<Eigen::Index>(b.size());
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> d(n + 1, m + 1);
    for (Eigen::Index i = 0; i <= n; ++i) d(i, 0) = static_cast<int>(i);
    for (Eigen::Index j = 0; j <= m; ++j) d(0, j) = static_cast<int>(j);
    for (Eigen::Index i = 1; i <= n; ++i) {
        for (Eigen::Index j = 1; j <= m; ++j) {
            const int sub = d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
            d(i, j) = std::min({sub, d(i - 1, j) + 1, d(i, j - 1) + 1});
        }
    }
    EditScript s;
    s.distance = d(n, m);
    Eigen::Index i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0) {
            const bool same = a[i - 1] == b[j - 1];
            if (d(i, j) == d(i - 1, j - 1) + (same ? 0 : 1)) {
                s.substitutions += same ? 0 : 1;
                --i;
                --j;
                continue;
            }
        }
        if (i > 0 && d(i, j) == d(i - 1, j) + 1) {
            ++s.deletions;
            --i;
        } else {
            ++s.insertions;
            --j;
        }
    }
    return s;
}

/// Character-level script over NFC Unicode scalar values.
EditScript levenshtein(std::string_view gt, std::string_view out);

/// Distinct ground-truth words whose occurrence count is identical in `out`.
int bow_count_matches(std::string_view gt, std::string_view out);

/// Levenshtein distance / ground-truth character count. Throws UndefinedMetric
/// for an empty ground truth.
double cer(std::string_view gt, std::string_view out);
/// (1 - cer) * 100, unclamped.
double character_accuracy(std::string_view gt, std::string_view out);
/// Word-level distance / ground-truth token count.
double wer(std::string_view gt, std::string_view out);
/// Distinct ground-truth words found at least once / distinct ground-truth words.
double index_bow(std::string_view gt, std::string_view out);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};
PrecisionRecall precision_recall_f1(std::string_view gt, std::string_view out);

ErrorCategory classify_errors(std::string_view gt, std::string_view out);

/// Every measure for one (ground truth, output) pair.
struct MetricRecord {
    double cer = 0.0;
    double character_accuracy = 0.0;
    double wer = 0.0;
    int bow_count_matches = 0;
    double index_bow = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    EditScript script;
    ErrorCategory category = ErrorCategory::None;
};

MetricRecord measure(std::string_view gt, std::string_view out);

/// Unicode scalar count of the NFC ground truth.
int character_count(std::string_view text);
int distinct_word_count(std::string_view text);

}  // namespace ocrtune
