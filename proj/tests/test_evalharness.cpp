#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ocrtune/csv.hpp"
#include "ocrtune/errors.hpp"
#include "ocrtune/evalharness.hpp"

using namespace ocrtune;
namespace fs = std::filesystem;

namespace {

std::vector<Sample> samples(int count, double p, std::uint64_t seed) {
    const std::vector<std::string> texts = {"CARTA DE LISBOA", "PROCESSO 12", "TEATRO NACIONAL", "ACTA 7"};
    std::vector<Sample> out;
    for (int i = 0; i < count; ++i) {
        Sample s;
        s.doc.id = "doc_" + std::to_string(i);
        s.doc.typology = i % 2 ? Typology::Letter : Typology::ProcessCover;
        s.ground_truth = texts[static_cast<std::size_t>(i) % texts.size()];
        s.image = render_synthetic(s.ground_truth, {p, 1.0, 255}, derive_seed(seed, {static_cast<std::uint64_t>(i)}));
        out.push_back(std::move(s));
    }
    return out;
}

EvaluationRecord record(std::string scenario, std::string algorithm, std::string doc, double accuracy,
                        ErrorCategory category = ErrorCategory::None) {
    EvaluationRecord r;
    r.scenario = std::move(scenario);
    r.algorithm = std::move(algorithm);
    r.document = std::move(doc);
    r.metrics.character_accuracy = accuracy;
    r.metrics.cer = (100.0 - accuracy) / 100.0;
    r.metrics.f1 = accuracy / 100.0;
    r.metrics.category = category;
    return r;
}

class ReportDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ocrtune_reports_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST(Scenario, NamesAndResolution) {
    EXPECT_EQ(Scenario::none().name(), "none");
    EXPECT_FALSE(Scenario::none().assignment_for(Typology::Letter).has_value());
    EXPECT_EQ(Scenario::defaults_for(Algorithm::Opening).name(), "default/opening");
    const auto g = Scenario::tuned_global(parse_assignment("median_blur ksize=3"));
    EXPECT_EQ(g.name(), "global/median_blur");
    EXPECT_EQ(g.assignment_for(Typology::Other)->at("ksize"), 3);
    const auto t = Scenario::tuned_by_typology(Algorithm::MedianBlur,
                                               {{Typology::Letter, parse_assignment("median_blur ksize=5")}});
    EXPECT_EQ(t.name(), "typology/median_blur");
    EXPECT_EQ(t.assignment_for(Typology::Letter)->at("ksize"), 5);
    EXPECT_THROW(t.assignment_for(Typology::Other), NotFound);
    for (auto l : {ScenarioLabel::None, ScenarioLabel::Default, ScenarioLabel::Global, ScenarioLabel::Typology}) {
        EXPECT_EQ(scenario_label_from_name(scenario_label_name(l)), l);
    }
}

TEST(Evaluate, CleanCorpusIsPerfectUnderStrokePreservingScenarios) {
    const auto docs = samples(4, 0.0, 1);
    const MockOcrEngine engine;
    for (const auto& scenario : {Scenario::none(), Scenario::tuned_global(parse_assignment("median_blur ksize=3")),
                                 Scenario::tuned_global(parse_assignment("box_blur ksize=3 borderType=4")),
                                 Scenario::tuned_global(parse_assignment("opening kernel=3 iterations=1 borderType=3")),
                                 Scenario::tuned_global(parse_assignment("otsu_threshold maxValue=255 type=0"))}) {
        const auto records = evaluate_scenario(docs, scenario, engine, 2);
        ASSERT_EQ(records.size(), 4U);
        for (const auto& r : records) {
            EXPECT_TRUE(r.ok);
            EXPECT_DOUBLE_EQ(r.metrics.character_accuracy, 100.0);
            EXPECT_EQ(r.metrics.category, ErrorCategory::None);
        }
    }
}

TEST(Evaluate, FailuresAreRecordedNotThrown) {
    const auto docs = samples(2, 0.0, 1);
    auto bad = defaults(Algorithm::MedianBlur);
    bad.values["ksize"] = 4;
    const auto records = evaluate_scenario(docs, Scenario::tuned_global(bad), MockOcrEngine());
    for (const auto& r : records) {
        EXPECT_FALSE(r.ok);
        EXPECT_FALSE(r.error.empty());
    }
    const auto missing = Scenario::tuned_by_typology(Algorithm::MedianBlur, {});
    for (const auto& r : evaluate_scenario(docs, missing, MockOcrEngine())) EXPECT_FALSE(r.ok);
}

TEST(Evaluate, ScenariosDifferOnNoisyDocuments) {
    const auto docs = samples(6, 0.15, 2);
    const MockOcrEngine engine;
    const auto none = evaluate_scenario(docs, Scenario::none(), engine);
    const auto median = evaluate_scenario(docs, Scenario::tuned_global(parse_assignment("median_blur ksize=3")), engine);
    bool differs = false;
    for (std::size_t i = 0; i < none.size(); ++i) {
        differs = differs || none[i].metrics.character_accuracy != median[i].metrics.character_accuracy;
    }
    EXPECT_TRUE(differs);
}

TEST(Records, SortOrderAndItems) {
    std::vector<EvaluationRecord> records = {record("typology", "opening", "b", 1), record("none", "-", "b", 1),
                                             record("default", "opening", "a", 1), record("none", "-", "a", 1),
                                             record("default", "median_blur", "z", 1)};
    sort_records(records);
    std::vector<std::string> order;
    for (const auto& r : records) order.push_back(r.item() + ":" + r.document);
    EXPECT_EQ(order, (std::vector<std::string>{"none:a", "none:b", "default/median_blur:z", "default/opening:a",
                                               "typology/opening:b"}));
}

TEST_F(ReportDir, MetricsCsvRoundTrip) {
    fs::create_directories(dir_);
    const auto docs = samples(3, 0.2, 3);
    auto records = evaluate_scenario(docs, Scenario::none(), MockOcrEngine());
    records.push_back(record("global", "opening", "x,\"quoted\"", 50.0, ErrorCategory::DelSub));
    records.back().ok = false;
    records.back().error = "engine exploded, badly";
    write_metrics_csv(dir_ / "metrics.csv", records);
    const auto back = read_metrics_csv(dir_ / "metrics.csv");
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].item(), records[i].item());
        EXPECT_EQ(back[i].document, records[i].document);
        EXPECT_EQ(back[i].ok, records[i].ok);
        EXPECT_EQ(back[i].error, records[i].error);
        EXPECT_EQ(back[i].metrics.category, records[i].metrics.category);
        EXPECT_NEAR(back[i].metrics.character_accuracy, records[i].metrics.character_accuracy, 1e-6);
        EXPECT_EQ(back[i].metrics.script, records[i].metrics.script);
    }
    std::ofstream(dir_ / "bad.csv") << "scenario,operator\nnone,-\n";
    EXPECT_THROW(read_metrics_csv(dir_ / "bad.csv"), MalformedInput);
}

TEST(ErrorTable, CountsPartitionRecords) {
    const std::vector<EvaluationRecord> records = {
        record("none", "-", "a", 100), record("none", "-", "b", 90, ErrorCategory::Sub),
        record("global", "opening", "a", 80, ErrorCategory::Sub),
        record("global", "opening", "b", 80, ErrorCategory::DelInsSub)};
    const auto table = error_frequency_table(records);
    ASSERT_EQ(table.items, (std::vector<std::string>{"none", "global/opening"}));
    EXPECT_EQ(table.counts(0, 0), 1);
    EXPECT_EQ(table.counts(0, static_cast<int>(ErrorCategory::Sub)), 1);
    EXPECT_EQ(table.counts(1, static_cast<int>(ErrorCategory::DelInsSub)), 1);
    EXPECT_EQ(table.counts.sum(), 4);
    EXPECT_EQ(table.counts.row(1).sum(), 2);
}

TEST(Compare, DirectionFollowsMeans) {
    std::vector<EvaluationRecord> records;
    for (int i = 0; i < 15; ++i) {
        const std::string doc = "d" + std::to_string(100 + i);
        records.push_back(record("none", "-", doc, 60.0 + i));
        records.push_back(record("global", "median_blur", doc, 80.0 + i * 1.1));
        records.push_back(record("default", "median_blur", doc, 60.0 + i + (i % 3 == 0 ? 0.5 : -0.5)));
    }
    const auto report = compare_records(records);
    ASSERT_EQ(report.items.size(), 3U);
    EXPECT_EQ(report.family_size, 3);
    EXPECT_EQ(report.pairwise.size(), 12U);  // 3 pairs x 2 orientations x 2 metrics
    std::size_t none = 0, global = 0;
    for (std::size_t i = 0; i < report.items.size(); ++i) {
        if (report.items[i].item == "none") none = i;
        if (report.items[i].item == "global/median_blur") global = i;
    }
    const auto* up = report.find(ReportMetric::CharacterAccuracy, global, none);
    ASSERT_NE(up, nullptr);
    EXPECT_EQ(up->result.direction, Direction::Better);
    EXPECT_GT(report.items[global].mean_character_accuracy, report.items[none].mean_character_accuracy);
    EXPECT_EQ(report.find(ReportMetric::CharacterAccuracy, none, global)->result.direction, Direction::Worse);
    ASSERT_TRUE(report.friedman.at(ReportMetric::CharacterAccuracy).has_value());
    EXPECT_LT(report.friedman.at(ReportMetric::CharacterAccuracy)->p_value, 0.05);

    EXPECT_FALSE(soft_order_check(report, "none", "global/median_blur").has_value());
    EXPECT_TRUE(soft_order_check(report, "global/median_blur", "none").has_value());
    EXPECT_TRUE(soft_order_check(report, "none", "typology/opening").has_value());
}

TEST(Compare, FailedDocumentsAreLeftOut) {
    std::vector<EvaluationRecord> records;
    for (int i = 0; i < 6; ++i) {
        const std::string doc = "d" + std::to_string(i);
        records.push_back(record("none", "-", doc, 50.0 + i));
        records.push_back(record("global", "opening", doc, 70.0 + i));
    }
    records.back().ok = false;
    const auto report = compare_records(records);
    EXPECT_EQ(report.find(ReportMetric::F1, 0, 1)->documents, 5);
    EXPECT_EQ(report.friedman.at(ReportMetric::F1)->documents, 5);
}

TEST_F(ReportDir, RenderedTables) {
    std::vector<EvaluationRecord> records;
    for (int i = 0; i < 8; ++i) {
        const std::string doc = "d" + std::to_string(i);
        records.push_back(record("none", "-", doc, 40.0 + i, ErrorCategory::Sub));
        records.push_back(record("global", "median_blur", doc, 90.0 + i));
    }
    render_reports(records, compare_records(records), dir_);
    for (const char* name : {"means.csv", "significance_character_accuracy.csv", "significance_f1.csv",
                             "pairwise.csv", "friedman.csv", "errors.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / name)) << name;
    }
    const auto means = csv::read(dir_ / "means.csv");
    ASSERT_EQ(means.size(), 3U);
    EXPECT_EQ(means[1][0], "none");
    const auto sig = csv::read(dir_ / "significance_character_accuracy.csv");
    ASSERT_EQ(sig.size(), 3U);
    EXPECT_EQ(sig[0], (csv::Row{"item", "mean", "none", "global/median_blur", "better_count"}));
    EXPECT_EQ(sig[1][2], "-");
    EXPECT_EQ(sig[1][3], "<<");  // n = 8, exact p = 1/256, times m = 1
    EXPECT_EQ(sig[2][2], ">>");
    EXPECT_EQ(sig[2][4], "1");
    const auto errors = csv::read(dir_ / "errors.csv");
    EXPECT_EQ(errors[0].size(), 10U);
    EXPECT_EQ(errors[1][4], "8");
}

TEST_F(ReportDir, EmptyAndSingleScenarioReports) {
    render_reports({}, compare_records({}), dir_ / "empty");
    EXPECT_EQ(csv::read(dir_ / "empty" / "means.csv").size(), 1U);
    EXPECT_EQ(csv::read(dir_ / "empty" / "pairwise.csv").size(), 1U);

    const std::vector<EvaluationRecord> one = {record("none", "-", "a", 90), record("none", "-", "b", 80)};
    const auto report = compare_records(one);
    EXPECT_TRUE(report.pairwise.empty());
    render_reports(one, report, dir_ / "one");
    EXPECT_EQ(csv::read(dir_ / "one" / "means.csv").size(), 2U);
    EXPECT_EQ(csv::read(dir_ / "one" / "significance_f1.csv").size(), 1U);
}
