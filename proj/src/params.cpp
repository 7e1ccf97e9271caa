#include "ocrtune/params.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "ocrtune/errors.hpp"
#include "ocrtune/imaging.hpp"

namespace ocrtune {
namespace {

struct AlgorithmInfo {
    Algorithm algorithm;
    std::string_view name;
    std::vector<ParamSpec> specs;
    std::vector<int> defaults;  // schema order
};

ParamSpec nominal(std::string name, int cardinality) {
    return {std::move(name), ParamKind::Nominal, 0, cardinality - 1, false};
}
ParamSpec discrete(std::string name, int lo, int hi, bool odd = false) {
    return {std::move(name), ParamKind::Discrete, lo, hi, odd};
}
ParamSpec continuous(std::string name, int lo, int hi) {
    return {std::move(name), ParamKind::Continuous, lo, hi, false};
}

std::vector<ParamSpec> morphology_specs() {
    return {continuous("kernel", 1, 255), discrete("iterations", 1, 10), nominal("borderType", 5)};
}

const std::vector<AlgorithmInfo>& registry() {
    static const std::vector<AlgorithmInfo> infos = {
        {Algorithm::AdaptiveThreshold, "adaptive_threshold",
         {continuous("maxValue", 0, 255), nominal("adaptiveMethod", 2), nominal("thresholdType", 2),
          discrete("blockSize", 3, 255, true), continuous("c", 0, 255)},
         {255, 0, 0, 11, 2}},
        {Algorithm::OtsuThreshold, "otsu_threshold",
         {continuous("maxValue", 0, 255), nominal("type", 5)},
         {255, 0}},
        {Algorithm::SimpleThreshold, "simple_threshold",
         {continuous("thresh", 0, 255), continuous("maxValue", 0, 255), nominal("type", 5)},
         {127, 255, 0}},
        {Algorithm::TriangleThreshold, "triangle_threshold",
         {continuous("maxValue", 0, 255), nominal("type", 5)},
         {255, 0}},
        {Algorithm::BilateralFilter, "bilateral_filter",
         {discrete("d", 1, 15), continuous("sigmaColor", 1, 255), continuous("sigmaSpace", 1, 255)},
         {9, 75, 75}},
        {Algorithm::GaussianBlur, "gaussian_blur",
         {discrete("ksize", 1, 31, true), nominal("borderType", 5)},
         {5, 3}},
        {Algorithm::BoxBlur, "box_blur",
         {discrete("ksize", 1, 31, true), nominal("borderType", 5)},
         {5, 3}},
        {Algorithm::MedianBlur, "median_blur", {discrete("ksize", 1, 31, true)}, {5}},
        {Algorithm::BlackHat, "black_hat", morphology_specs(), {5, 1, 3}},
        {Algorithm::Closing, "closing", morphology_specs(), {5, 1, 3}},
        {Algorithm::Dilation, "dilation", morphology_specs(), {5, 1, 3}},
        {Algorithm::Erosion, "erosion", morphology_specs(), {5, 1, 3}},
        {Algorithm::MorphGradient, "morph_gradient", morphology_specs(), {5, 1, 3}},
        {Algorithm::Opening, "opening", morphology_specs(), {5, 1, 3}},
        {Algorithm::TopHat, "top_hat", morphology_specs(), {5, 1, 3}},
    };
    return infos;
}

const AlgorithmInfo& info(Algorithm a) {
    for (const auto& i : registry()) {
        if (i.algorithm == a) return i;
    }
    throw NotFound("unknown algorithm");
}

Raster apply_morphology(const ParamAssignment& a, const Raster& r) {
    const StructuringElement kernel{a.at("kernel")};
    const int iterations = a.at("iterations");
    const BorderMode border = border_mode_from_code(a.at("borderType"));
    switch (a.algorithm) {
        case Algorithm::Erosion: return erode(r, kernel, iterations, border);
        case Algorithm::Dilation: return dilate(r, kernel, iterations, border);
        case Algorithm::Opening: return morph_composite(r, MorphOp::Opening, kernel, iterations, border);
        case Algorithm::Closing: return morph_composite(r, MorphOp::Closing, kernel, iterations, border);
        case Algorithm::MorphGradient: return morph_composite(r, MorphOp::Gradient, kernel, iterations, border);
        case Algorithm::TopHat: return morph_composite(r, MorphOp::TopHat, kernel, iterations, border);
        case Algorithm::BlackHat: return morph_composite(r, MorphOp::BlackHat, kernel, iterations, border);
        default: break;
    }
    throw InvalidParameter("not a morphological operator");
}

}  // namespace

std::string_view algorithm_name(Algorithm a) { return info(a).name; }

Algorithm algorithm_from_name(std::string_view name) {
    for (const auto& i : registry()) {
        if (i.name == name) return i.algorithm;
    }
    throw NotFound("unknown algorithm '" + std::string(name) + "'");
}

int ParamAssignment::at(const std::string& name) const {
    const auto it = values.find(name);
    if (it == values.end()) {
        throw InvalidParameter("assignment for " + std::string(algorithm_name(algorithm)) +
                               " has no parameter '" + name + "'");
    }
    return it->second;
}

bool ConstraintReport::feasible() const noexcept {
    for (double g : g_values) {
        if (g != 0.0) return false;
    }
    return true;
}

double ConstraintReport::total() const noexcept {
    double sum = 0.0;
    for (double g : g_values) sum += g;
    return sum;
}

const std::vector<ParamSpec>& schema(Algorithm a) { return info(a).specs; }

ParamAssignment defaults(Algorithm a) {
    const auto& i = info(a);
    ParamAssignment out{a, {}};
    for (std::size_t k = 0; k < i.specs.size(); ++k) out.values[i.specs[k].name] = i.defaults[k];
    return out;
}

void validate(const ParamAssignment& a) {
    const auto& specs = schema(a.algorithm);
    if (a.values.size() != specs.size()) {
        throw InvalidParameter(std::string(algorithm_name(a.algorithm)) + " expects " +
                               std::to_string(specs.size()) + " parameters, got " +
                               std::to_string(a.values.size()));
    }
    for (const auto& spec : specs) {
        const int v = a.at(spec.name);
        if (!spec.contains(v)) {
            throw InvalidParameter(spec.name + "=" + std::to_string(v) + " outside [" +
                                   std::to_string(spec.min) + "," + std::to_string(spec.max) + "]");
        }
    }
}

ConstraintReport constraint_violation(const ParamAssignment& a) {
    ConstraintReport report;
    for (const auto& spec : schema(a.algorithm)) {
        if (!spec.must_be_odd) continue;
        report.g_values.push_back(std::abs(a.at(spec.name) % 2 - 1));
    }
    return report;
}

int random_value(const ParamSpec& spec, Rng& rng) {
    if (!spec.must_be_odd) {
        return std::uniform_int_distribution<int>(spec.min, spec.max)(rng);
    }
    const int first_odd = spec.min % 2 != 0 ? spec.min : spec.min + 1;
    const int last_odd = spec.max % 2 != 0 ? spec.max : spec.max - 1;
    const int slots = (last_odd - first_odd) / 2;
    return first_odd + 2 * std::uniform_int_distribution<int>(0, slots)(rng);
}

ParamAssignment random_assignment(Algorithm a, Rng& rng) {
    ParamAssignment out{a, {}};
    for (const auto& spec : schema(a)) out.values[spec.name] = random_value(spec, rng);
    return out;
}

std::vector<int> ordered_values(const ParamAssignment& a) {
    std::vector<int> out;
    for (const auto& spec : schema(a.algorithm)) out.push_back(a.at(spec.name));
    return out;
}

std::string to_text(const ParamAssignment& a) {
    std::string out(algorithm_name(a.algorithm));
    for (const auto& spec : schema(a.algorithm)) {
        out += ' ' + spec.name + '=' + std::to_string(a.at(spec.name));
    }
    return out;
}

ParamAssignment parse_assignment(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    if (!(in >> token)) throw MalformedInput("empty parameter assignment");
    ParamAssignment out{algorithm_from_name(token), {}};
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
            throw MalformedInput("expected key=value, got '" + token + "'");
        }
        const std::string key = token.substr(0, eq);
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(token.substr(eq + 1), &used);
            if (used != token.size() - eq - 1) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw MalformedInput("non-integer value in '" + token + "'");
        }
        if (!out.values.emplace(key, value).second) {
            throw MalformedInput("duplicate parameter '" + key + "'");
        }
    }
    for (const auto& [key, value] : out.values) {
        bool known = false;
        for (const auto& spec : schema(out.algorithm)) known = known || spec.name == key;
        if (!known) {
            throw InvalidParameter("unknown parameter '" + key + "' for " +
                                   std::string(algorithm_name(out.algorithm)));
        }
    }
    validate(out);
    return out;
}

Raster apply(const ParamAssignment& a, const Raster& r) {
    switch (a.algorithm) {
        case Algorithm::AdaptiveThreshold:
            return adaptive_threshold(r, a.at("maxValue"), a.at("adaptiveMethod"),
                                      a.at("thresholdType"), a.at("blockSize"), a.at("c"));
        case Algorithm::OtsuThreshold:
            return otsu_threshold(r, a.at("maxValue"), a.at("type")).image;
        case Algorithm::SimpleThreshold:
            return simple_threshold(r, a.at("thresh"), a.at("maxValue"), a.at("type"));
        case Algorithm::TriangleThreshold:
            return triangle_threshold(r, a.at("maxValue"), a.at("type")).image;
        case Algorithm::BilateralFilter:
            return bilateral_filter(r, a.at("d"), a.at("sigmaColor"), a.at("sigmaSpace"));
        case Algorithm::GaussianBlur:
            return gaussian_blur(r, a.at("ksize"), border_mode_from_code(a.at("borderType")));
        case Algorithm::BoxBlur:
            return box_blur(r, a.at("ksize"), border_mode_from_code(a.at("borderType")));
        case Algorithm::MedianBlur:
            return median_blur(r, a.at("ksize"));
        default:
            return apply_morphology(a, r);
    }
}

}  // namespace ocrtune
