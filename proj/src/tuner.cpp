#include "ocrtune/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ocrtune/errors.hpp"
#include "ocrtune/metrics.hpp"
#include "ocrtune/text.hpp"
#include "detail/parallel.hpp"

namespace ocrtune {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

bool better_for_survival(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

void assign_rank_and_crowding(std::vector<Individual>& pop) {
    const auto fronts = fast_nondominated_sort(pop);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        Eigen::MatrixXd objectives(static_cast<Eigen::Index>(fronts[r].size()), 2);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            const auto& f = pop[static_cast<std::size_t>(fronts[r][k])].fitness;
            objectives.row(static_cast<Eigen::Index>(k)) << f.f1, f.f2;
        }
        const Eigen::VectorXd crowding = crowding_distance(objectives);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            auto& ind = pop[static_cast<std::size_t>(fronts[r][k])];
            ind.rank = static_cast<int>(r);
            ind.crowding = crowding(static_cast<Eigen::Index>(k));
        }
    }
}

GenerationRecord summarize(int generation, const std::vector<Individual>& pop) {
    GenerationRecord rec;
    rec.generation = generation;
    rec.best_f1 = kInfinity;
    rec.best_matches = -kInfinity;
    int feasible = 0;
    for (const auto& ind : pop) {
        if (!ind.feasible()) continue;
        ++feasible;
        rec.best_f1 = std::min(rec.best_f1, ind.fitness.f1);
        rec.best_matches = std::max(rec.best_matches, -ind.fitness.f2);
    }
    if (feasible == 0) {
        rec.best_f1 = std::nan("");
        rec.best_matches = std::nan("");
    }
    rec.feasible_fraction = pop.empty() ? 0.0 : static_cast<double>(feasible) / static_cast<double>(pop.size());
    return rec;
}

// Evaluates every assignment not already in the cache, in parallel, then
// fills the fitness fields of `pop`.
class FitnessCache {
public:
    FitnessCache(std::span<const Sample> docs, const OcrEngine& engine, const TunerConfig& config)
        : docs_(docs), engine_(engine), config_(config) {}

    void evaluate(std::vector<Individual>& pop) {
        std::vector<std::string> pending;
        std::vector<const ParamAssignment*> pending_assignments;
        for (const auto& ind : pop) {
            auto key = to_text(ind.assignment);
            if (cache_.contains(key)) continue;
            if (std::find(pending.begin(), pending.end(), key) != pending.end()) continue;
            pending.push_back(std::move(key));
            pending_assignments.push_back(&ind.assignment);
        }
        std::vector<Fitness> results(pending.size());
        detail::parallel_for(pending.size(), config_.workers, [&](std::size_t i) {
            results[i] = evaluate_fitness(*pending_assignments[i], docs_, engine_, config_.aggregation,
                                          config_.warn);
        });
        for (std::size_t i = 0; i < pending.size(); ++i) cache_.emplace(pending[i], results[i]);
        for (auto& ind : pop) ind.fitness = cache_.at(to_text(ind.assignment));
    }

    std::size_t size() const noexcept { return cache_.size(); }

private:
    std::span<const Sample> docs_;
    const OcrEngine& engine_;
    const TunerConfig& config_;
    std::map<std::string, Fitness> cache_;
};

}  // namespace

void validate(const TunerConfig& config) {
    if (config.population_size < 4 || config.population_size % 2 != 0) {
        throw InvalidParameter("population_size must be an even integer >= 4");
    }
    if (config.generations < 0) throw InvalidParameter("generations must be >= 0");
    if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0) {
        throw InvalidParameter("crossover_rate must be in [0,1]");
    }
    if (config.mutation_rate && (*config.mutation_rate < 0.0 || *config.mutation_rate > 1.0)) {
        throw InvalidParameter("mutation_rate must be in [0,1]");
    }
    if (config.workers < 1) throw InvalidParameter("workers must be >= 1");
}

Fitness evaluate_fitness(const ParamAssignment& assignment, std::span<const Sample> docs,
                         const OcrEngine& engine, Aggregation aggregation, const WarningSink& warn) {
    if (docs.empty()) throw InvalidParameter("fitness needs at least one document");
    double distance = 0.0;
    double matches = 0.0;
    for (const auto& doc : docs) {
        const auto gt = text::scalars(doc.ground_truth);
        try {
            const std::string out = engine.recognize(apply(assignment, doc.image));
            distance += edit_distance(gt, text::scalars(out));
            matches += bow_count_matches(doc.ground_truth, out);
        } catch (const Error& e) {
            distance += static_cast<double>(gt.size());
            if (warn) warn("document " + doc.doc.id + " failed under '" + to_text(assignment) + "': " + e.what());
        }
    }
    if (aggregation == Aggregation::Mean) {
        distance /= static_cast<double>(docs.size());
        matches /= static_cast<double>(docs.size());
    }
    return {distance, -matches, constraint_violation(assignment).total()};
}

bool constraint_dominates(const Eigen::Ref<const Eigen::RowVectorXd>& a, double violation_a,
                          const Eigen::Ref<const Eigen::RowVectorXd>& b, double violation_b) {
    const bool fa = violation_a == 0.0;
    const bool fb = violation_b == 0.0;
    if (fa != fb) return fa;
    if (!fa) return violation_a < violation_b;
    return (a.array() <= b.array()).all() && (a.array() < b.array()).any();
}

Fronts fast_nondominated_sort(const Eigen::MatrixXd& objectives, const Eigen::VectorXd& violation) {
    const auto n = static_cast<int>(objectives.rows());
    if (violation.size() != objectives.rows()) throw InvalidParameter("objective/violation size mismatch");
    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    std::vector<int> domination_count(static_cast<std::size_t>(n), 0);
    Fronts fronts(1);
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (constraint_dominates(objectives.row(p), violation(p), objectives.row(q), violation(q))) {
                dominated[static_cast<std::size_t>(p)].push_back(q);
                ++domination_count[static_cast<std::size_t>(q)];
            } else if (constraint_dominates(objectives.row(q), violation(q), objectives.row(p), violation(p))) {
                dominated[static_cast<std::size_t>(q)].push_back(p);
                ++domination_count[static_cast<std::size_t>(p)];
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        if (domination_count[static_cast<std::size_t>(p)] == 0) fronts[0].push_back(p);
    }
    if (fronts[0].empty()) return {};
    for (std::size_t k = 0; !fronts[k].empty(); ++k) {
        std::vector<int> next;
        for (int p : fronts[k]) {
            for (int q : dominated[static_cast<std::size_t>(p)]) {
                if (--domination_count[static_cast<std::size_t>(q)] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        if (next.empty()) break;
        fronts.push_back(std::move(next));
    }
    return fronts;
}

Fronts fast_nondominated_sort(std::span<const Individual> population) {
    const auto n = static_cast<Eigen::Index>(population.size());
    Eigen::MatrixXd objectives(n, 2);
    Eigen::VectorXd violation(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& f = population[static_cast<std::size_t>(i)].fitness;
        objectives.row(i) << f.f1, f.f2;
        violation(i) = f.violation;
    }
    return fast_nondominated_sort(objectives, violation);
}

Eigen::VectorXd crowding_distance(const Eigen::MatrixXd& objectives) {
    const auto n = objectives.rows();
    Eigen::VectorXd distance = Eigen::VectorXd::Zero(n);
    if (n <= 2) {
        distance.setConstant(kInfinity);
        return distance;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < objectives.cols(); ++m) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return objectives(a, m) < objectives(b, m); });
        distance(order.front()) = kInfinity;
        distance(order.back()) = kInfinity;
        const double range = objectives(order.back(), m) - objectives(order.front(), m);
        if (range <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            distance(order[k]) += (objectives(order[k + 1], m) - objectives(order[k - 1], m)) / range;
        }
    }
    return distance;
}

std::size_t tournament_select(std::span<const Individual> population, Rng& rng) {
    if (population.empty()) throw InvalidParameter("tournament on an empty population");
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    const auto& x = population[a];
    const auto& y = population[b];
    if (x.rank != y.rank) return x.rank < y.rank ? a : b;
    if (x.crowding != y.crowding) return x.crowding > y.crowding ? a : b;
    return std::bernoulli_distribution(0.5)(rng) ? a : b;
}

std::pair<ParamAssignment, ParamAssignment> crossover(const ParamAssignment& a, const ParamAssignment& b,
                                                      double rate, Rng& rng) {
    if (a.algorithm != b.algorithm) throw InvalidParameter("crossover parents use different operators");
    std::pair<ParamAssignment, ParamAssignment> children{a, b};
    if (!std::bernoulli_distribution(rate)(rng)) return children;
    std::bernoulli_distribution coin(0.5);
    for (const auto& spec : schema(a.algorithm)) {
        if (coin(rng)) std::swap(children.first.values.at(spec.name), children.second.values.at(spec.name));
    }
    return children;
}

ParamAssignment mutate(const ParamAssignment& x, double rate, Rng& rng) {
    ParamAssignment out = x;
    std::bernoulli_distribution hit(rate);
    for (const auto& spec : schema(x.algorithm)) {
        if (hit(rng)) out.values[spec.name] = random_value(spec, rng);
    }
    return out;
}

TuneResult evolve(Algorithm algorithm, std::span<const Sample> docs, const OcrEngine& engine,
                  const TunerConfig& config, const GenerationObserver& observer) {
    validate(config);
    if (docs.empty()) throw InvalidParameter("tuning needs at least one document");
    const auto n = static_cast<std::size_t>(config.population_size);
    const double mutation_rate =
        config.mutation_rate.value_or(1.0 / static_cast<double>(schema(algorithm).size()));

    FitnessCache cache(docs, engine, config);
    TuneResult result;

    std::vector<Individual> pop(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(config.seed, {0, i}));
        pop[i].assignment = random_assignment(algorithm, rng);
    }
    cache.evaluate(pop);
    assign_rank_and_crowding(pop);
    result.history.push_back(summarize(0, pop));
    if (observer) observer(0, pop);

    for (int gen = 1; gen <= config.generations; ++gen) {
        std::vector<Individual> offspring;
        offspring.reserve(n);
        for (std::size_t pair = 0; pair < n / 2; ++pair) {
            Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(gen), pair}));
            const auto& p1 = pop[tournament_select(pop, rng)];
            const auto& p2 = pop[tournament_select(pop, rng)];
            auto [c1, c2] = crossover(p1.assignment, p2.assignment, config.crossover_rate, rng);
            offspring.push_back({mutate(c1, mutation_rate, rng), {}, -1, 0.0});
            offspring.push_back({mutate(c2, mutation_rate, rng), {}, -1, 0.0});
        }
        cache.evaluate(offspring);

        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        assign_rank_and_crowding(merged);

        std::vector<std::size_t> order(merged.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return better_for_survival(merged[a], merged[b]);
        });
        pop.clear();
        for (std::size_t k = 0; k < n; ++k) pop.push_back(merged[order[k]]);
        assign_rank_and_crowding(pop);

        result.history.push_back(summarize(gen, pop));
        if (observer) observer(gen, pop);
    }

    std::map<std::string, bool> seen;
    for (const auto& ind : pop) {
        if (ind.rank != 0) continue;
        if (seen.emplace(to_text(ind.assignment), true).second) result.front.push_back(ind);
    }
    std::sort(result.front.begin(), result.front.end(), [](const Individual& a, const Individual& b) {
        if (a.fitness.f1 != b.fitness.f1) return a.fitness.f1 < b.fitness.f1;
        if (a.fitness.f2 != b.fitness.f2) return a.fitness.f2 < b.fitness.f2;
        return ordered_values(a.assignment) < ordered_values(b.assignment);
    });
    result.evaluations = cache.size();
    return result;
}

ParamAssignment select_solution(std::span<const Individual> front) {
    if (front.empty()) throw InvalidParameter("cannot select from an empty front");
    const auto best = std::min_element(front.begin(), front.end(), [](const Individual& a, const Individual& b) {
        if (a.fitness.f1 != b.fitness.f1) return a.fitness.f1 < b.fitness.f1;
        if (a.fitness.f2 != b.fitness.f2) return a.fitness.f2 < b.fitness.f2;
        return ordered_values(a.assignment) < ordered_values(b.assignment);
    });
    return best->assignment;
}

}  // namespace ocrtune
