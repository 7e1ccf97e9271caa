#include "ocrtune/evalharness.hpp"

#include <algorithm>
#include <set>

#include "ocrtune/csv.hpp"
#include "ocrtune/errors.hpp"
#include "detail/parallel.hpp"

namespace ocrtune {
namespace {

constexpr std::array<ScenarioLabel, 4> kLabels = {ScenarioLabel::None, ScenarioLabel::Default,
                                                  ScenarioLabel::Global, ScenarioLabel::Typology};
constexpr std::array<ReportMetric, 2> kReportMetrics = {ReportMetric::CharacterAccuracy, ReportMetric::F1};

const csv::Row kMetricsHeader = {"scenario", "operator", "document", "typology", "ok", "cer",
                                 "character_accuracy", "wer", "bow_count_matches", "index_bow", "precision",
                                 "recall", "f1", "distance", "insertions", "deletions", "substitutions",
                                 "category", "error"};

int label_order(const std::string& label) {
    for (std::size_t i = 0; i < kLabels.size(); ++i) {
        if (scenario_label_name(kLabels[i]) == label) return static_cast<int>(i);
    }
    return static_cast<int>(kLabels.size());
}

bool item_less(const std::string& scenario_a, const std::string& alg_a, const std::string& scenario_b,
               const std::string& alg_b) {
    const int la = label_order(scenario_a);
    const int lb = label_order(scenario_b);
    if (la != lb) return la < lb;
    if (scenario_a != scenario_b) return scenario_a < scenario_b;
    return alg_a < alg_b;
}

double metric_value(const MetricRecord& m, ReportMetric metric) {
    return metric == ReportMetric::CharacterAccuracy ? m.character_accuracy : m.f1;
}

Direction flipped(Direction d) {
    switch (d) {
        case Direction::Better: return Direction::Worse;
        case Direction::Worse: return Direction::Better;
        case Direction::NotSignificant: break;
    }
    return Direction::NotSignificant;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw MalformedInput("bad integer in column " + what + ": '" + s + "'");
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw MalformedInput("bad number in column " + what + ": '" + s + "'");
}

}  // namespace

std::string_view scenario_label_name(ScenarioLabel s) {
    switch (s) {
        case ScenarioLabel::None: return "none";
        case ScenarioLabel::Default: return "default";
        case ScenarioLabel::Global: return "global";
        case ScenarioLabel::Typology: return "typology";
    }
    return "none";
}

ScenarioLabel scenario_label_from_name(std::string_view name) {
    for (auto l : kLabels) {
        if (scenario_label_name(l) == name) return l;
    }
    throw NotFound("unknown scenario '" + std::string(name) + "' (allowed: none, default, global, typology)");
}

Scenario Scenario::none() { return {}; }

Scenario Scenario::defaults_for(Algorithm a) {
    Scenario s;
    s.label = ScenarioLabel::Default;
    s.algorithm = a;
    s.global = defaults(a);
    return s;
}

Scenario Scenario::tuned_global(ParamAssignment a) {
    validate(a);
    Scenario s;
    s.label = ScenarioLabel::Global;
    s.algorithm = a.algorithm;
    s.global = std::move(a);
    return s;
}

Scenario Scenario::tuned_by_typology(Algorithm a, std::map<Typology, ParamAssignment> by_typology) {
    for (const auto& [t, assignment] : by_typology) {
        if (assignment.algorithm != a) {
            throw InvalidParameter("typology " + std::string(typology_name(t)) + " assignment is for " +
                                   std::string(algorithm_name(assignment.algorithm)));
        }
        validate(assignment);
    }
    Scenario s;
    s.label = ScenarioLabel::Typology;
    s.algorithm = a;
    s.per_typology = std::move(by_typology);
    return s;
}

std::string Scenario::name() const {
    if (label == ScenarioLabel::None) return "none";
    return std::string(scenario_label_name(label)) + "/" + std::string(algorithm_name(algorithm));
}

std::optional<ParamAssignment> Scenario::assignment_for(Typology t) const {
    switch (label) {
        case ScenarioLabel::None: return std::nullopt;
        case ScenarioLabel::Default:
        case ScenarioLabel::Global: return global;
        case ScenarioLabel::Typology: break;
    }
    const auto it = per_typology.find(t);
    if (it == per_typology.end()) {
        throw NotFound("no " + std::string(algorithm_name(algorithm)) + " assignment for typology " +
                       std::string(typology_name(t)));
    }
    return it->second;
}

std::string EvaluationRecord::item() const {
    if (scenario == "none") return "none";
    return scenario + "/" + algorithm;
}

std::vector<EvaluationRecord> evaluate_scenario(std::span<const Sample> docs, const Scenario& scenario,
                                                const OcrEngine& engine, int workers) {
    std::vector<EvaluationRecord> records(docs.size());
    detail::parallel_for(docs.size(), workers, [&](std::size_t i) {
        const auto& sample = docs[i];
        auto& rec = records[i];
        rec.scenario = std::string(scenario_label_name(scenario.label));
        rec.algorithm = scenario.label == ScenarioLabel::None ? "-" : std::string(algorithm_name(scenario.algorithm));
        rec.document = sample.doc.id;
        rec.typology = sample.doc.typology;
        try {
            const auto assignment = scenario.assignment_for(sample.doc.typology);
            const std::string out = engine.recognize(assignment ? apply(*assignment, sample.image) : sample.image);
            rec.metrics = measure(sample.ground_truth, out);
        } catch (const Error& e) {
            rec.ok = false;
            rec.error = e.what();
        }
    });
    return records;
}

void sort_records(std::vector<EvaluationRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const EvaluationRecord& a, const EvaluationRecord& b) {
        if (a.scenario != b.scenario || a.algorithm != b.algorithm) {
            return item_less(a.scenario, a.algorithm, b.scenario, b.algorithm);
        }
        return a.document < b.document;
    });
}

void write_metrics_csv(const std::filesystem::path& path, std::span<const EvaluationRecord> records) {
    std::vector<EvaluationRecord> sorted(records.begin(), records.end());
    sort_records(sorted);
    std::vector<csv::Row> rows;
    for (const auto& r : sorted) {
        const auto& m = r.metrics;
        rows.push_back({r.scenario, r.algorithm, r.document, std::string(typology_name(r.typology)),
                        r.ok ? "1" : "0", csv::number(m.cer), csv::number(m.character_accuracy),
                        csv::number(m.wer), std::to_string(m.bow_count_matches), csv::number(m.index_bow),
                        csv::number(m.precision), csv::number(m.recall), csv::number(m.f1),
                        std::to_string(m.script.distance), std::to_string(m.script.insertions),
                        std::to_string(m.script.deletions), std::to_string(m.script.substitutions),
                        std::string(category_name(m.category)), r.error});
    }
    csv::write(path, kMetricsHeader, rows);
}

std::vector<EvaluationRecord> read_metrics_csv(const std::filesystem::path& path) {
    const auto rows = csv::read(path);
    if (rows.empty() || rows[0] != kMetricsHeader) {
        throw MalformedInput(path.string() + " does not have the metrics header");
    }
    std::vector<EvaluationRecord> records;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != kMetricsHeader.size()) {
            throw MalformedInput(path.string() + ": row " + std::to_string(i + 1) + " has " +
                                 std::to_string(row.size()) + " fields");
        }
        EvaluationRecord r;
        r.scenario = row[0];
        scenario_label_from_name(r.scenario);
        r.algorithm = row[1];
        r.document = row[2];
        r.typology = typology_from_name(row[3]);
        r.ok = row[4] == "1";
        auto& m = r.metrics;
        m.cer = parse_double(row[5], "cer");
        m.character_accuracy = parse_double(row[6], "character_accuracy");
        m.wer = parse_double(row[7], "wer");
        m.bow_count_matches = parse_int(row[8], "bow_count_matches");
        m.index_bow = parse_double(row[9], "index_bow");
        m.precision = parse_double(row[10], "precision");
        m.recall = parse_double(row[11], "recall");
        m.f1 = parse_double(row[12], "f1");
        m.script.distance = parse_int(row[13], "distance");
        m.script.insertions = parse_int(row[14], "insertions");
        m.script.deletions = parse_int(row[15], "deletions");
        m.script.substitutions = parse_int(row[16], "substitutions");
        m.category = category_from_name(row[17]);
        r.error = row[18];
        records.push_back(std::move(r));
    }
    return records;
}

ErrorTable error_frequency_table(std::span<const EvaluationRecord> records) {
    std::vector<EvaluationRecord> sorted(records.begin(), records.end());
    sort_records(sorted);
    ErrorTable table;
    std::map<std::string, std::size_t> index;
    for (const auto& r : sorted) {
        if (!r.ok) continue;
        if (index.emplace(r.item(), table.items.size()).second) table.items.push_back(r.item());
    }
    table.counts.setZero(static_cast<Eigen::Index>(table.items.size()), kErrorCategoryCount);
    for (const auto& r : sorted) {
        if (!r.ok) continue;
        ++table.counts(static_cast<Eigen::Index>(index.at(r.item())), static_cast<int>(r.metrics.category));
    }
    return table;
}

std::string_view report_metric_name(ReportMetric m) {
    return m == ReportMetric::CharacterAccuracy ? "character_accuracy" : "f1";
}

const PairwiseComparison* Report::find(ReportMetric m, std::size_t row, std::size_t column) const {
    for (const auto& p : pairwise) {
        if (p.metric == m && p.row == row && p.column == column) return &p;
    }
    return nullptr;
}

Report compare_records(std::span<const EvaluationRecord> records, double alpha) {
    std::vector<EvaluationRecord> sorted(records.begin(), records.end());
    sort_records(sorted);

    Report report;
    // item -> document -> metrics of successful evaluations
    std::vector<std::map<std::string, MetricRecord>> by_item;
    std::map<std::string, std::size_t> index;
    for (const auto& r : sorted) {
        auto [it, inserted] = index.emplace(r.item(), report.items.size());
        if (inserted) {
            report.items.push_back({r.item(), r.scenario, r.algorithm, 0, 0.0, 0.0});
            by_item.emplace_back();
        }
        if (!r.ok) continue;
        if (!by_item[it->second].emplace(r.document, r.metrics).second) {
            report.warnings.push_back("duplicate record for " + r.item() + " / " + r.document + " ignored");
        }
    }
    for (std::size_t i = 0; i < report.items.size(); ++i) {
        auto& s = report.items[i];
        s.documents = static_cast<int>(by_item[i].size());
        for (const auto& [doc, m] : by_item[i]) {
            s.mean_character_accuracy += m.character_accuracy;
            s.mean_f1 += m.f1;
        }
        if (s.documents > 0) {
            s.mean_character_accuracy /= s.documents;
            s.mean_f1 /= s.documents;
        }
    }

    const auto k = report.items.size();
    report.family_size = std::max(1, pairwise_comparisons(static_cast<int>(k)));
    for (auto metric : kReportMetrics) report.friedman[metric] = std::nullopt;
    if (k < 2) return report;

    // Friedman over documents every item evaluated successfully.
    std::vector<std::string> shared;
    for (const auto& [doc, m] : by_item[0]) {
        bool everywhere = true;
        for (std::size_t i = 1; i < k && everywhere; ++i) everywhere = by_item[i].contains(doc);
        if (everywhere) shared.push_back(doc);
    }
    for (auto metric : kReportMetrics) {
        if (shared.size() < 2) continue;
        Eigen::MatrixXd values(static_cast<Eigen::Index>(shared.size()), static_cast<Eigen::Index>(k));
        for (std::size_t d = 0; d < shared.size(); ++d) {
            for (std::size_t i = 0; i < k; ++i) {
                values(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)) =
                    metric_value(by_item[i].at(shared[d]), metric);
            }
        }
        report.friedman[metric] = friedman_test(values);
    }
    if (shared.size() < 2) report.warnings.push_back("fewer than 2 documents shared by all items; no Friedman test");

    for (auto metric : kReportMetrics) {
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                std::vector<double> xa, xb;
                for (const auto& [doc, m] : by_item[a]) {
                    const auto it = by_item[b].find(doc);
                    if (it == by_item[b].end()) continue;
                    xa.push_back(metric_value(m, metric));
                    xb.push_back(metric_value(it->second, metric));
                }
                PairwiseComparison forward{metric, a, b, static_cast<int>(xa.size()),
                                           compare_paired(xa, xb, report.family_size, alpha)};
                PairwiseComparison backward = forward;
                backward.row = b;
                backward.column = a;
                backward.result.direction = flipped(forward.result.direction);
                const auto reverse = wilcoxon_signed_rank(xb, xa, Alternative::Greater);
                backward.result.statistic = reverse.statistic;
                report.pairwise.push_back(forward);
                report.pairwise.push_back(backward);
            }
        }
    }
    return report;
}

void write_error_table(const std::filesystem::path& path, const ErrorTable& table) {
    csv::Row header = {"item"};
    for (int c = 0; c < kErrorCategoryCount; ++c) header.emplace_back(category_name(static_cast<ErrorCategory>(c)));
    header.emplace_back("total");
    std::vector<csv::Row> rows;
    for (std::size_t i = 0; i < table.items.size(); ++i) {
        csv::Row row = {table.items[i]};
        const auto counts = table.counts.row(static_cast<Eigen::Index>(i));
        for (int c = 0; c < kErrorCategoryCount; ++c) row.push_back(std::to_string(counts(c)));
        row.push_back(std::to_string(counts.sum()));
        rows.push_back(std::move(row));
    }
    csv::write(path, header, rows);
}

void render_reports(std::span<const EvaluationRecord> records, const Report& report,
                    const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!std::filesystem::is_directory(out_dir)) throw IoError("cannot create " + out_dir.string());

    std::vector<csv::Row> means;
    for (const auto& s : report.items) {
        means.push_back({s.item, s.scenario, s.algorithm, std::to_string(s.documents),
                         csv::number(s.mean_character_accuracy), csv::number(s.mean_f1)});
    }
    csv::write(out_dir / "means.csv",
               {"item", "scenario", "operator", "documents", "mean_character_accuracy", "mean_f1"}, means);

    const auto k = report.items.size();
    for (auto metric : kReportMetrics) {
        csv::Row header = {"item", "mean"};
        std::vector<csv::Row> rows;
        if (k >= 2) {
            for (const auto& s : report.items) header.push_back(s.item);
            header.emplace_back("better_count");
            for (std::size_t r = 0; r < k; ++r) {
                const auto& s = report.items[r];
                csv::Row row = {s.item, csv::number(metric == ReportMetric::CharacterAccuracy ? s.mean_character_accuracy
                                                                                            : s.mean_f1)};
                int better = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    const auto* p = report.find(metric, r, c);
                    if (p == nullptr) {
                        row.emplace_back("-");
                        continue;
                    }
                    row.push_back(significance_marker(p->result));
                    if (p->result.direction == Direction::Better) ++better;
                }
                row.push_back(std::to_string(better));
                rows.push_back(std::move(row));
            }
        }
        csv::write(out_dir / ("significance_" + std::string(report_metric_name(metric)) + ".csv"), header, rows);
    }

    std::vector<csv::Row> pairwise;
    for (const auto& p : report.pairwise) {
        pairwise.push_back({std::string(report_metric_name(p.metric)), report.items[p.row].item,
                            report.items[p.column].item, std::to_string(p.documents), csv::number(p.result.statistic),
                            csv::number(p.result.p_value), csv::number(p.result.adjusted_p),
                            std::string(direction_name(p.result.direction)), significance_marker(p.result),
                            std::to_string(report.family_size)});
    }
    csv::write(out_dir / "pairwise.csv",
               {"metric", "item", "versus", "documents", "statistic", "p_value", "adjusted_p", "direction", "marker",
                "family_size"},
               pairwise);

    std::vector<csv::Row> friedman;
    for (const auto& [metric, result] : report.friedman) {
        if (!result) continue;
        friedman.push_back({std::string(report_metric_name(metric)), std::to_string(result->algorithms),
                            std::to_string(result->documents), csv::number(result->statistic),
                            csv::number(result->p_value)});
    }
    csv::write(out_dir / "friedman.csv", {"metric", "items", "documents", "chi_square", "p_value"}, friedman);

    write_error_table(out_dir / "errors.csv", error_frequency_table(records));
}

std::optional<std::string> soft_order_check(const Report& report, std::string_view lower, std::string_view higher) {
    const ItemSummary* lo = nullptr;
    const ItemSummary* hi = nullptr;
    for (const auto& s : report.items) {
        if (s.item == lower) lo = &s;
        if (s.item == higher) hi = &s;
    }
    if (lo == nullptr || hi == nullptr) {
        return "order check skipped: " + std::string(lo == nullptr ? lower : higher) + " not evaluated";
    }
    if (lo->mean_character_accuracy < hi->mean_character_accuracy) return std::nullopt;
    return "expected " + std::string(lower) + " (" + csv::number(lo->mean_character_accuracy) + ") < " +
           std::string(higher) + " (" + csv::number(hi->mean_character_accuracy) + ") on mean character accuracy";
}

}  // namespace ocrtune
