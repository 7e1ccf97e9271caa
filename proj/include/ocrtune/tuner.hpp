#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ocrtune/corpus.hpp"
#include "ocrtune/ocr.hpp"
#include "ocrtune/params.hpp"
#include "ocrtune/random.hpp"

namespace ocrtune {

enum class Aggregation { Sum, Mean };

/// f1 = aggregated Levenshtein distance, f2 = -(aggregated BoW count
/// matches); both minimized. violation = sum of constraint g values.
struct Fitness {
    double f1 = 0.0;
    double f2 = 0.0;
    double violation = 0.0;

    bool operator==(const Fitness&) const = default;
};

struct Individual {
    ParamAssignment assignment;
    Fitness fitness;
    int rank = -1;
    double crowding = 0.0;

    bool feasible() const noexcept { return fitness.violation == 0.0; }
};

using WarningSink = std::function<void(const std::string&)>;

struct TunerConfig {
    int population_size = 24;
    int generations = 30;
    double crossover_rate = 0.9;
    std::optional<double> mutation_rate;  // 1 / gene count when unset
    std::uint64_t seed = 0;
    Aggregation aggregation = Aggregation::Sum;
    int workers = 1;
    WarningSink warn;
};

/// Throws InvalidParameter for an odd or too small population, negative
/// generations, rates outside [0,1] or workers < 1.
void validate(const TunerConfig& config);

/// Runs preprocess -> OCR -> metrics over `docs`. A document whose operator
/// or engine call fails contributes its ground-truth length to f1 and no
/// matches; the failure is reported through `warn`.
Fitness evaluate_fitness(const ParamAssignment& assignment, std::span<const Sample> docs,
                         const OcrEngine& engine, Aggregation aggregation = Aggregation::Sum,
                         const WarningSink& warn = {});

/// Feasible beats infeasible, lower violation beats higher, and feasible
/// pairs compare by Pareto dominance with both objectives minimized.
bool constraint_dominates(const Eigen::Ref<const Eigen::RowVectorXd>& a, double violation_a,
                          const Eigen::Ref<const Eigen::RowVectorXd>& b, double violation_b);

using Fronts = std::vector<std::vector<int>>;

/// Rows of `objectives` are individuals. Fronts hold ascending indices.
Fronts fast_nondominated_sort(const Eigen::MatrixXd& objectives, const Eigen::VectorXd& violation);
Fronts fast_nondominated_sort(std::span<const Individual> population);

/// Rows are the members of one front. Boundary members are infinite.
Eigen::VectorXd crowding_distance(const Eigen::MatrixXd& objectives);

/// Binary tournament on (rank, crowding, coin). Returns an index.
std::size_t tournament_select(std::span<const Individual> population, Rng& rng);

/// With probability `rate` the parents mix, each gene swapping with
/// probability 1/2; otherwise the children are copies.
std::pair<ParamAssignment, ParamAssignment> crossover(const ParamAssignment& a, const ParamAssignment& b,
                                                      double rate, Rng& rng);

/// Each gene is redrawn with probability `rate`; parity genes stay odd.
ParamAssignment mutate(const ParamAssignment& x, double rate, Rng& rng);

struct GenerationRecord {
    int generation = 0;
    double best_f1 = 0.0;
    double best_matches = 0.0;  // -f2 of the best-f2 feasible member
    double feasible_fraction = 0.0;
};

struct TuneResult {
    std::vector<Individual> front;  // rank 0 of the final population, distinct assignments
    std::vector<GenerationRecord> history;
    std::size_t evaluations = 0;  // distinct assignments evaluated
};

using GenerationObserver = std::function<void(int generation, std::span<const Individual> population)>;

/// NSGA-II with elitist survival. Random draws come from streams derived
/// from (seed, generation, slot), so the result does not depend on the
/// worker count.
TuneResult evolve(Algorithm algorithm, std::span<const Sample> docs, const OcrEngine& engine,
                  const TunerConfig& config, const GenerationObserver& observer = {});

/// Minimum f1, then minimum f2, then lexicographically smallest values.
ParamAssignment select_solution(std::span<const Individual> front);

}  // namespace ocrtune
