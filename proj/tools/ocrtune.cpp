// Command-line front end: synth, split, tune, apply, ocr, evaluate, compare, errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ocrtune/corpus.hpp"
#include "ocrtune/csv.hpp"
#include "ocrtune/errors.hpp"
#include "ocrtune/evalharness.hpp"
#include "ocrtune/ocr.hpp"
#include "ocrtune/params.hpp"
#include "ocrtune/pgm.hpp"
#include "ocrtune/tuner.hpp"

namespace fs = std::filesystem;
using namespace ocrtune;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

// Dotted keys accepted in a --config file.
const std::set<std::string> kConfigKeys = {
    "seed", "workers", "manifest", "out", "params_dir", "scenarios",
    "engine.kind", "engine.binary", "engine.language", "engine.psm", "engine.seed", "engine.rejection",
    "engine.work_dir",
    "tuner.population", "tuner.generations", "tuner.crossover_rate", "tuner.mutation_rate",
    "tuner.aggregation", "tuner.mode", "tuner.algorithm",
    "synth.count", "synth.mix", "synth.salt_pepper", "synth.contrast", "synth.background",
    "split.sample",
};

class Config {
public:
    void load(const fs::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config " + path.string());
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedInput("config " + path.string() + ": " + e.what());
        }
        if (!doc.is_object()) throw MalformedInput("config must be a JSON object");
        flatten(doc, "");
    }

    template <typename T>
    T pick(const std::optional<T>& flag, const std::string& key, T fallback) const {
        if (flag) return *flag;
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return it->second.get<T>();
        } catch (const nlohmann::json::exception&) {
            throw InvalidParameter("config key " + key + " has the wrong type");
        }
    }

    template <typename T>
    std::optional<T> pick_optional(const std::optional<T>& flag, const std::string& key) const {
        if (flag) return flag;
        if (!values_.contains(key)) return std::nullopt;
        return pick<T>(std::nullopt, key, T{});
    }

private:
    void flatten(const nlohmann::json& node, const std::string& prefix) {
        for (const auto& [key, value] : node.items()) {
            const std::string full = prefix.empty() ? key : prefix + "." + key;
            if (value.is_object() && !kConfigKeys.contains(full)) {
                flatten(value, full);
                continue;
            }
            if (!kConfigKeys.contains(full)) throw InvalidParameter("unknown config key '" + full + "'");
            values_[full] = value;
        }
    }

    std::map<std::string, nlohmann::json> values_;
};

struct EngineFlags {
    std::optional<std::string> kind;
    std::optional<std::string> binary;
    std::optional<std::string> language;
    std::optional<int> psm;
    std::optional<long long> mock_seed;
    std::optional<int> rejection;
    std::optional<std::string> work_dir;
};

struct Shared {
    std::optional<std::string> config_path;
    std::optional<int> workers;
    EngineFlags engine;
    Config config;
};

void add_engine_options(CLI::App* cmd, Shared& s) {
    cmd->add_option("--engine", s.engine.kind, "OCR engine: mock | tesseract");
    cmd->add_option("--tesseract-bin", s.engine.binary, "Tesseract executable");
    cmd->add_option("--lang", s.engine.language, "Tesseract language code (default por)");
    cmd->add_option("--psm", s.engine.psm, "Tesseract page segmentation mode");
    cmd->add_option("--mock-seed", s.engine.mock_seed, "Seed of the mock engine's rejection hash");
    cmd->add_option("--rejection", s.engine.rejection, "Mock engine rejection distance");
    cmd->add_option("--work-dir", s.engine.work_dir, "Scratch directory for engine calls");
    cmd->add_option("--workers", s.workers, "Concurrent workers / OCR invocations");
}

int workers(const Shared& s) {
    const int w = s.config.pick<int>(s.workers, "workers", 1);
    if (w < 1) throw InvalidParameter("workers must be >= 1");
    return w;
}

std::unique_ptr<OcrEngine> build_engine(const Shared& s) {
    const auto& c = s.config;
    const auto kind = c.pick<std::string>(s.engine.kind, "engine.kind", "mock");
    if (kind == "mock") {
        const auto seed = c.pick<long long>(s.engine.mock_seed, "engine.seed", 0);
        const int rejection = c.pick<int>(s.engine.rejection, "engine.rejection", 10);
        return std::make_unique<MockOcrEngine>(static_cast<std::uint64_t>(seed), rejection);
    }
    if (kind == "tesseract") {
        TesseractConfig tc;
        tc.binary = c.pick<std::string>(s.engine.binary, "engine.binary", "tesseract");
        tc.language = c.pick<std::string>(s.engine.language, "engine.language", "por");
        tc.page_segmentation_mode = c.pick_optional<int>(s.engine.psm, "engine.psm");
        if (auto dir = c.pick_optional<std::string>(s.engine.work_dir, "engine.work_dir")) tc.work_dir = *dir;
        tc.max_concurrent = workers(s);
        tc.log = [](const std::string& line) { std::cerr << line << '\n'; };
        return std::make_unique<TesseractEngine>(std::move(tc));
    }
    throw InvalidParameter("unknown engine '" + kind + "' (allowed: mock, tesseract)");
}

std::uint64_t required_seed(const Shared& s, const std::optional<long long>& flag) {
    const auto seed = s.config.pick_optional<long long>(flag, "seed");
    if (!seed) throw InvalidParameter("--seed is required");
    return static_cast<std::uint64_t>(*seed);
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ParamAssignment read_params_file(const fs::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        return parse_assignment(line);
    }
    throw MalformedInput(path.string() + " holds no assignment");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

// --- synth -------------------------------------------------------------------

struct SynthArgs {
    std::optional<std::string> out;
    std::optional<int> count;
    std::optional<long long> seed;
    std::optional<std::string> mix;
    std::optional<double> salt_pepper;
    std::optional<double> contrast;
    std::optional<int> background;
};

int run_synth(const Shared& s, const SynthArgs& a) {
    const auto& c = s.config;
    const auto seed = required_seed(s, a.seed);
    const auto out = c.pick_optional<std::string>(a.out, "out");
    if (!out) throw InvalidParameter("--out is required");
    NoiseProfile noise;
    noise.salt_pepper_p = c.pick<double>(a.salt_pepper, "synth.salt_pepper", 0.0);
    noise.contrast_scale = c.pick<double>(a.contrast, "synth.contrast", 1.0);
    noise.background = c.pick<int>(a.background, "synth.background", 255);
    const auto mix = parse_typology_mix(c.pick<std::string>(a.mix, "synth.mix", "letter=1"));
    const auto corpus = generate_synthetic(c.pick<int>(a.count, "synth.count", 20), mix, noise, seed, *out);
    std::cout << "wrote " << corpus.documents.size() << " documents to " << corpus.manifest.string() << '\n';
    return 0;
}

// --- split -------------------------------------------------------------------

struct SplitArgs {
    std::optional<std::string> manifest;
    std::optional<std::string> out;
    std::optional<long long> seed;
    std::optional<bool> sample;
};

int run_split(const Shared& s, const SplitArgs& a) {
    const auto& c = s.config;
    const auto manifest = c.pick_optional<std::string>(a.manifest, "manifest");
    if (!manifest) throw InvalidParameter("--manifest is required");
    const fs::path out = c.pick<std::string>(a.out, "out", fs::path(*manifest).parent_path().string());
    const auto seed = static_cast<std::uint64_t>(c.pick<long long>(a.seed, "seed", 0));

    const auto docs = load_manifest(*manifest);
    if (docs.empty()) throw InvalidParameter("manifest " + *manifest + " has no documents");
    Rng rng(seed);
    const auto sample = c.pick<bool>(a.sample, "split.sample", true) ? sample_by_series(docs, rng) : docs;
    const auto split = split_halves(sample, rng);
    for (const auto& w : split.warnings) warn(w);
    ensure_dir(out);
    write_manifest(out / "parameterization.tsv", split.parameterization);
    write_manifest(out / "evaluation.tsv", split.evaluation);
    std::cout << "parameterization: " << split.parameterization.size()
              << ", evaluation: " << split.evaluation.size() << '\n';
    return 0;
}

// --- tune --------------------------------------------------------------------

struct TuneArgs {
    std::optional<std::string> manifest;
    std::optional<std::string> algorithm;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    std::optional<long long> seed;
    std::optional<int> population;
    std::optional<int> generations;
    std::optional<double> crossover_rate;
    std::optional<double> mutation_rate;
    std::optional<std::string> aggregation;
};

void write_tune_outputs(const fs::path& out, const std::string& stem, const TuneResult& result) {
    write_text(out / (stem + ".params"), to_text(select_solution(result.front)) + "\n");
    std::string front;
    for (const auto& ind : result.front) {
        front += to_text(ind.assignment) + "\tf1=" + csv::number(ind.fitness.f1) +
                 "\tf2=" + csv::number(ind.fitness.f2) + "\tviolation=" + csv::number(ind.fitness.violation) + "\n";
    }
    write_text(out / (stem + ".front.txt"), front);
    std::vector<csv::Row> rows;
    for (const auto& h : result.history) {
        rows.push_back({std::to_string(h.generation), csv::number(h.best_f1), csv::number(h.best_matches),
                        csv::number(h.feasible_fraction)});
    }
    csv::write(out / (stem + ".history.csv"), {"generation", "best_f1", "best_neg_f2", "feasible_fraction"}, rows);
}

int run_tune(const Shared& s, const TuneArgs& a) {
    const auto& c = s.config;
    const auto seed = required_seed(s, a.seed);
    const auto manifest = c.pick_optional<std::string>(a.manifest, "manifest");
    if (!manifest) throw InvalidParameter("--manifest is required");
    const auto algorithm_text = c.pick_optional<std::string>(a.algorithm, "tuner.algorithm");
    if (!algorithm_text) throw InvalidParameter("--algorithm is required");
    const Algorithm algorithm = algorithm_from_name(*algorithm_text);
    const auto mode = c.pick<std::string>(a.mode, "tuner.mode", "global");
    if (mode != "global" && mode != "per-typology") {
        throw InvalidParameter("mode must be global or per-typology");
    }
    const fs::path out = c.pick<std::string>(a.out, "out", ".");

    TunerConfig tc;
    tc.seed = seed;
    tc.population_size = c.pick<int>(a.population, "tuner.population", tc.population_size);
    tc.generations = c.pick<int>(a.generations, "tuner.generations", tc.generations);
    tc.crossover_rate = c.pick<double>(a.crossover_rate, "tuner.crossover_rate", tc.crossover_rate);
    tc.mutation_rate = c.pick_optional<double>(a.mutation_rate, "tuner.mutation_rate");
    const auto aggregation = c.pick<std::string>(a.aggregation, "tuner.aggregation", "sum");
    if (aggregation != "sum" && aggregation != "mean") throw InvalidParameter("aggregation must be sum or mean");
    tc.aggregation = aggregation == "sum" ? Aggregation::Sum : Aggregation::Mean;
    tc.workers = workers(s);
    tc.warn = warn;
    validate(tc);

    const auto engine = build_engine(s);
    const auto samples = load_samples(load_manifest(*manifest));
    if (samples.empty()) throw InvalidParameter("manifest " + *manifest + " has no documents");
    ensure_dir(out);

    const std::string alg(algorithm_name(algorithm));
    if (mode == "global") {
        const auto result = evolve(algorithm, samples, *engine, tc);
        write_tune_outputs(out, alg + ".global", result);
        std::cout << "global: " << to_text(select_solution(result.front)) << '\n';
        return 0;
    }
    std::map<Typology, std::vector<Sample>> groups;
    for (const auto& sample : samples) groups[sample.doc.typology].push_back(sample);
    for (const auto& [typology, subset] : groups) {
        const auto result = evolve(algorithm, subset, *engine, tc);
        const std::string scope(typology_name(typology));
        write_tune_outputs(out, alg + "." + scope, result);
        std::cout << scope << ": " << to_text(select_solution(result.front)) << '\n';
    }
    return 0;
}

// --- apply / ocr -------------------------------------------------------------

struct ApplyArgs {
    std::string input;
    std::string output;
    std::optional<std::string> params_file;
    std::optional<std::string> assignment;
};

int run_apply(const ApplyArgs& a) {
    if (a.params_file.has_value() == a.assignment.has_value()) {
        throw InvalidParameter("give exactly one of --params or --assignment");
    }
    const auto assignment = a.params_file ? read_params_file(*a.params_file) : parse_assignment(*a.assignment);
    pgm::write(a.output, apply(assignment, pgm::read(a.input)));
    return 0;
}

struct OcrArgs {
    std::string input;
    std::optional<std::string> output;
};

int run_ocr(const Shared& s, const OcrArgs& a) {
    const auto engine = build_engine(s);
    const auto text = engine->recognize(pgm::read(a.input));
    if (a.output) {
        write_text(*a.output, text + "\n");
    } else {
        std::cout << text << '\n';
    }
    return 0;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
    std::optional<std::string> manifest;
    std::vector<std::string> scenarios;
    std::optional<std::string> params_dir;
    std::optional<std::string> out;
};

Scenario resolve_scenario(const std::string& spec, const std::optional<std::string>& params_dir,
                          const std::vector<Sample>& samples) {
    if (spec == "none") return Scenario::none();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw InvalidParameter("scenario '" + spec + "' must be none or <label>:<algorithm>");
    }
    const auto label = scenario_label_from_name(spec.substr(0, colon));
    const auto algorithm = algorithm_from_name(spec.substr(colon + 1));
    const std::string alg(algorithm_name(algorithm));
    if (label == ScenarioLabel::Default) return Scenario::defaults_for(algorithm);
    if (!params_dir) throw InvalidParameter("scenario " + spec + " needs --params-dir");
    const fs::path dir = *params_dir;
    if (label == ScenarioLabel::Global) {
        auto a = read_params_file(dir / (alg + ".global.params"));
        if (a.algorithm != algorithm) throw InvalidParameter("parameter file does not match " + alg);
        return Scenario::tuned_global(std::move(a));
    }
    std::map<Typology, ParamAssignment> by_typology;
    for (const auto& sample : samples) {
        const auto t = sample.doc.typology;
        if (by_typology.contains(t)) continue;
        by_typology.emplace(t, read_params_file(dir / (alg + "." + std::string(typology_name(t)) + ".params")));
    }
    return Scenario::tuned_by_typology(algorithm, std::move(by_typology));
}

int run_evaluate(const Shared& s, const EvaluateArgs& a) {
    const auto& c = s.config;
    const auto manifest = c.pick_optional<std::string>(a.manifest, "manifest");
    if (!manifest) throw InvalidParameter("--manifest is required");
    auto specs = a.scenarios;
    if (specs.empty()) specs = c.pick<std::vector<std::string>>(std::nullopt, "scenarios", {"none"});
    const auto params_dir = c.pick_optional<std::string>(a.params_dir, "params_dir");
    const fs::path out = c.pick<std::string>(a.out, "out", "metrics.csv");

    const auto samples = load_samples(load_manifest(*manifest));
    std::vector<Scenario> scenarios;
    for (const auto& spec : specs) scenarios.push_back(resolve_scenario(spec, params_dir, samples));

    const auto engine = build_engine(s);
    std::vector<EvaluationRecord> records;
    int failures = 0;
    for (const auto& scenario : scenarios) {
        auto part = evaluate_scenario(samples, scenario, *engine, workers(s));
        for (const auto& r : part) {
            if (!r.ok) {
                ++failures;
                warn(r.item() + " / " + r.document + ": " + r.error);
            }
        }
        records.insert(records.end(), part.begin(), part.end());
    }
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    write_metrics_csv(out, records);
    std::cout << "wrote " << records.size() << " records to " << out.string();
    if (failures > 0) std::cout << " (" << failures << " failed)";
    std::cout << '\n';
    return 0;
}

// --- compare / errors --------------------------------------------------------

std::vector<EvaluationRecord> read_all_metrics(const std::vector<std::string>& paths) {
    if (paths.empty()) throw InvalidParameter("--metrics is required");
    std::vector<EvaluationRecord> records;
    for (const auto& p : paths) {
        auto part = read_metrics_csv(p);
        records.insert(records.end(), part.begin(), part.end());
    }
    return records;
}

struct CompareArgs {
    std::vector<std::string> metrics;
    std::optional<std::string> out;
    double alpha = 0.05;
    std::optional<std::string> check_order;
};

int run_compare(const Shared& s, const CompareArgs& a) {
    const auto records = read_all_metrics(a.metrics);
    const fs::path out = s.config.pick<std::string>(a.out, "out", "report");
    const auto report = compare_records(records, a.alpha);
    for (const auto& w : report.warnings) warn(w);
    render_reports(records, report, out);
    if (a.check_order) {
        const auto comma = a.check_order->find(',');
        if (comma == std::string::npos) throw InvalidParameter("--check-order expects LOWER,HIGHER");
        if (auto w = soft_order_check(report, a.check_order->substr(0, comma), a.check_order->substr(comma + 1))) {
            warn(*w);
        }
    }
    std::cout << "wrote reports for " << report.items.size() << " items to " << out.string() << '\n';
    return 0;
}

struct ErrorsArgs {
    std::vector<std::string> metrics;
    std::optional<std::string> out;
};

int run_errors(const ErrorsArgs& a) {
    const auto table = error_frequency_table(read_all_metrics(a.metrics));
    if (a.out) {
        write_error_table(*a.out, table);
        return 0;
    }
    std::cout << "item";
    for (int c = 0; c < kErrorCategoryCount; ++c) std::cout << ',' << category_name(static_cast<ErrorCategory>(c));
    std::cout << ",total\n";
    for (std::size_t i = 0; i < table.items.size(); ++i) {
        const auto row = table.counts.row(static_cast<Eigen::Index>(i));
        std::cout << csv::quote(table.items[i]);
        for (int c = 0; c < kErrorCategoryCount; ++c) std::cout << ',' << row(c);
        std::cout << ',' << row.sum() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tune image preprocessing for OCR and evaluate the result"};
    app.require_subcommand(1);
    Shared shared;
    app.add_option("--config", shared.config_path, "JSON configuration; flags take precedence");

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
    synth_cmd->add_option("--out", synth.out, "Output directory");
    synth_cmd->add_option("--count", synth.count, "Number of documents (default 20)");
    synth_cmd->add_option("--seed", synth.seed, "Random seed (required)");
    synth_cmd->add_option("--mix", synth.mix, "Typology proportions, e.g. letter=0.5,other=0.5");
    synth_cmd->add_option("--salt-pepper", synth.salt_pepper, "Salt-and-pepper probability");
    synth_cmd->add_option("--contrast", synth.contrast, "Contrast scale in (0,1]");
    synth_cmd->add_option("--background", synth.background, "Background gray level");

    SplitArgs split;
    auto* split_cmd = app.add_subcommand("split", "Sample by series and split into two halves");
    split_cmd->add_option("--manifest", split.manifest, "Input manifest");
    split_cmd->add_option("--out", split.out, "Directory for parameterization.tsv and evaluation.tsv");
    split_cmd->add_option("--seed", split.seed, "Random seed (default 0)");
    split_cmd->add_option("--sample", split.sample, "Apply the per-series sampling rule first (default true)");

    TuneArgs tune;
    auto* tune_cmd = app.add_subcommand("tune", "Tune one operator's parameters");
    tune_cmd->add_option("--manifest", tune.manifest, "Parameterization manifest");
    tune_cmd->add_option("--algorithm", tune.algorithm, "Operator name, e.g. median_blur");
    tune_cmd->add_option("--mode", tune.mode, "global | per-typology");
    tune_cmd->add_option("--out", tune.out, "Output directory");
    tune_cmd->add_option("--seed", tune.seed, "Random seed (required)");
    tune_cmd->add_option("--population", tune.population, "Population size (even, >= 4)");
    tune_cmd->add_option("--generations", tune.generations, "Generation count");
    tune_cmd->add_option("--crossover-rate", tune.crossover_rate, "Crossover probability");
    tune_cmd->add_option("--mutation-rate", tune.mutation_rate, "Per-gene mutation probability");
    tune_cmd->add_option("--aggregation", tune.aggregation, "sum | mean");
    add_engine_options(tune_cmd, shared);

    ApplyArgs apply_args;
    auto* apply_cmd = app.add_subcommand("apply", "Apply an operator to a PGM image");
    apply_cmd->add_option("--input", apply_args.input, "Input P5 image")->required();
    apply_cmd->add_option("--output", apply_args.output, "Output P5 image")->required();
    apply_cmd->add_option("--params", apply_args.params_file, "File with an assignment line");
    apply_cmd->add_option("--assignment", apply_args.assignment, "Assignment text, e.g. 'median_blur ksize=3'");

    OcrArgs ocr_args;
    auto* ocr_cmd = app.add_subcommand("ocr", "Recognize a PGM image");
    ocr_cmd->add_option("--input", ocr_args.input, "Input P5 image")->required();
    ocr_cmd->add_option("--output", ocr_args.output, "Write the text here instead of stdout");
    add_engine_options(ocr_cmd, shared);

    EvaluateArgs evaluate;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate scenarios and write metrics.csv");
    evaluate_cmd->add_option("--manifest", evaluate.manifest, "Evaluation manifest");
    evaluate_cmd->add_option("--scenario", evaluate.scenarios,
                             "none | default:<alg> | global:<alg> | typology:<alg> (repeatable)");
    evaluate_cmd->add_option("--params-dir", evaluate.params_dir, "Directory with tuned .params files");
    evaluate_cmd->add_option("--out", evaluate.out, "Metrics CSV path");
    add_engine_options(evaluate_cmd, shared);

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand("compare", "Friedman and pairwise Wilcoxon reports");
    compare_cmd->add_option("--metrics", compare.metrics, "Metrics CSV (repeatable)");
    compare_cmd->add_option("--out", compare.out, "Report directory");
    compare_cmd->add_option("--alpha", compare.alpha, "Significance level (default 0.05)");
    compare_cmd->add_option("--check-order", compare.check_order,
                            "LOWER,HIGHER items; warn unless LOWER has the smaller mean accuracy");

    ErrorsArgs errors;
    auto* errors_cmd = app.add_subcommand("errors", "Edit-operation category counts");
    errors_cmd->add_option("--metrics", errors.metrics, "Metrics CSV (repeatable)");
    errors_cmd->add_option("--out", errors.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (shared.config_path) shared.config.load(*shared.config_path);
        if (synth_cmd->parsed()) return run_synth(shared, synth);
        if (split_cmd->parsed()) return run_split(shared, split);
        if (tune_cmd->parsed()) return run_tune(shared, tune);
        if (apply_cmd->parsed()) return run_apply(apply_args);
        if (ocr_cmd->parsed()) return run_ocr(shared, ocr_args);
        if (evaluate_cmd->parsed()) return run_evaluate(shared, evaluate);
        if (compare_cmd->parsed()) return run_compare(shared, compare);
        if (errors_cmd->parsed()) return run_errors(errors);
    } catch (const EngineFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (!e.diagnostics().empty()) std::cerr << e.diagnostics() << '\n';
        return kExitRuntime;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitValidation;
}
