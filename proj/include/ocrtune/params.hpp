#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrtune/random.hpp"
#include "ocrtune/raster.hpp"

namespace ocrtune {

enum class Algorithm {
    AdaptiveThreshold,
    OtsuThreshold,
    SimpleThreshold,
    TriangleThreshold,
    BilateralFilter,
    GaussianBlur,
    BoxBlur,
    MedianBlur,
    BlackHat,
    Closing,
    Dilation,
    Erosion,
    MorphGradient,
    Opening,
    TopHat,
};

inline constexpr std::array<Algorithm, 15> kAllAlgorithms = {
    Algorithm::AdaptiveThreshold, Algorithm::OtsuThreshold, Algorithm::SimpleThreshold,
    Algorithm::TriangleThreshold, Algorithm::BilateralFilter, Algorithm::GaussianBlur,
    Algorithm::BoxBlur,           Algorithm::MedianBlur,      Algorithm::BlackHat,
    Algorithm::Closing,           Algorithm::Dilation,        Algorithm::Erosion,
    Algorithm::MorphGradient,     Algorithm::Opening,         Algorithm::TopHat,
};

std::string_view algorithm_name(Algorithm a);
/// Throws NotFound for unknown identifiers.
Algorithm algorithm_from_name(std::string_view name);

enum class ParamKind { Nominal, Discrete, Continuous };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Discrete;
    int min = 0;  // nominal: 0
    int max = 0;  // nominal: cardinality - 1
    bool must_be_odd = false;

    int cardinality() const noexcept { return max - min + 1; }
    bool contains(int v) const noexcept { return v >= min && v <= max; }
};

/// One point of an operator's parameter space.
struct ParamAssignment {
    Algorithm algorithm = Algorithm::MedianBlur;
    std::map<std::string, int> values;

    int at(const std::string& name) const;
    bool operator==(const ParamAssignment&) const = default;
};

struct ConstraintReport {
    std::vector<double> g_values;

    bool feasible() const noexcept;
    double total() const noexcept;
};

/// Tunable parameters of an operator, in table order.
const std::vector<ParamSpec>& schema(Algorithm a);
ParamAssignment defaults(Algorithm a);

/// Range and coverage check; throws InvalidParameter. Parity is not checked
/// here, it is reported by constraint_violation.
void validate(const ParamAssignment& a);

/// g = |p mod 2 - 1| for every must-be-odd parameter, in schema order.
ConstraintReport constraint_violation(const ParamAssignment& a);

/// Uniform draw inside the ParamSpec range; odd values only for parity params.
int random_value(const ParamSpec& spec, Rng& rng);
ParamAssignment random_assignment(Algorithm a, Rng& rng);

/// Values in schema order.
std::vector<int> ordered_values(const ParamAssignment& a);

/// `algorithm key=value ...` in schema order.
std::string to_text(const ParamAssignment& a);
/// Inverse of to_text. Throws MalformedInput / NotFound / InvalidParameter.
ParamAssignment parse_assignment(std::string_view text);

/// Runs the operator described by `a` on `r`.
Raster apply(const ParamAssignment& a, const Raster& r);

}  // namespace ocrtune
