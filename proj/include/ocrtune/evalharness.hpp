#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ocrtune/corpus.hpp"
#include "ocrtune/metrics.hpp"
#include "ocrtune/ocr.hpp"
#include "ocrtune/params.hpp"
#include "ocrtune/stats.hpp"

namespace ocrtune {

enum class ScenarioLabel { None, Default, Global, Typology };

std::string_view scenario_label_name(ScenarioLabel s);
ScenarioLabel scenario_label_from_name(std::string_view name);

/// Where the parameters for one evaluation come from.
struct Scenario {
    ScenarioLabel label = ScenarioLabel::None;
    Algorithm algorithm = Algorithm::MedianBlur;  // unused for None
    std::optional<ParamAssignment> global;
    std::map<Typology, ParamAssignment> per_typology;

    static Scenario none();
    static Scenario defaults_for(Algorithm a);
    static Scenario tuned_global(ParamAssignment a);
    static Scenario tuned_by_typology(Algorithm a, std::map<Typology, ParamAssignment> by_typology);

    /// "none" or "<label>/<algorithm>".
    std::string name() const;
    /// Empty for None. Throws NotFound when a typology has no assignment.
    std::optional<ParamAssignment> assignment_for(Typology t) const;
};

/// One (scenario, document) outcome. `ok` is false when preprocessing, the
/// engine or a metric failed; `error` then holds the reason.
struct EvaluationRecord {
    std::string scenario;   // label name
    std::string algorithm;  // "-" for none
    std::string document;
    Typology typology = Typology::Other;
    bool ok = true;
    std::string error;
    MetricRecord metrics;

    /// "none" or "<scenario>/<algorithm>".
    std::string item() const;
};

/// Records come back in document order; per-document failures are recorded.
std::vector<EvaluationRecord> evaluate_scenario(std::span<const Sample> docs, const Scenario& scenario,
                                                const OcrEngine& engine, int workers = 1);

/// Sorts by scenario label, algorithm, then document id.
void sort_records(std::vector<EvaluationRecord>& records);

void write_metrics_csv(const std::filesystem::path& path, std::span<const EvaluationRecord> records);
std::vector<EvaluationRecord> read_metrics_csv(const std::filesystem::path& path);

/// Counts per item in category order (rows follow `items`).
struct ErrorTable {
    std::vector<std::string> items;
    Eigen::Matrix<int, Eigen::Dynamic, kErrorCategoryCount> counts;
};
ErrorTable error_frequency_table(std::span<const EvaluationRecord> records);

enum class ReportMetric { CharacterAccuracy, F1 };
std::string_view report_metric_name(ReportMetric m);

struct ItemSummary {
    std::string item;
    std::string scenario;
    std::string algorithm;
    int documents = 0;
    double mean_character_accuracy = 0.0;
    double mean_f1 = 0.0;
};

struct PairwiseComparison {
    ReportMetric metric = ReportMetric::CharacterAccuracy;
    std::size_t row = 0;  // index into Report::items
    std::size_t column = 0;
    int documents = 0;
    ComparisonResult result;
};

struct Report {
    std::vector<ItemSummary> items;
    std::vector<PairwiseComparison> pairwise;  // both orientations of every pair
    std::map<ReportMetric, std::optional<FriedmanResult>> friedman;
    int family_size = 0;  // Bonferroni m per metric table
    std::vector<std::string> warnings;

    const PairwiseComparison* find(ReportMetric m, std::size_t row, std::size_t column) const;
};

/// Means, Friedman tests and Bonferroni-corrected pairwise Wilcoxon tests
/// over documents evaluated successfully by every compared item.
Report compare_records(std::span<const EvaluationRecord> records, double alpha = 0.05);

/// Writes means.csv, significance_character_accuracy.csv,
/// significance_f1.csv, pairwise.csv, friedman.csv and errors.csv.
void render_reports(std::span<const EvaluationRecord> records, const Report& report,
                    const std::filesystem::path& out_dir);
void write_error_table(const std::filesystem::path& path, const ErrorTable& table);

/// Returns a warning when `higher` does not have a larger mean character
/// accuracy than `lower`, or when either item is missing.
std::optional<std::string> soft_order_check(const Report& report, std::string_view lower, std::string_view higher);

}  // namespace ocrtune
