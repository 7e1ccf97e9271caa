#include "ocrtune/metrics.hpp"

#include <map>

#include "ocrtune/errors.hpp"
#include "ocrtune/text.hpp"

namespace ocrtune {
namespace {

constexpr std::array<std::string_view, kErrorCategoryCount> kCategoryNames = {
    "none", "del", "ins", "sub", "del+ins", "del+sub", "ins+sub", "del+ins+sub"};

using WordCounts = std::map<std::u32string, int>;

WordCounts count_words(const std::vector<std::u32string>& tokens) {
    WordCounts counts;
    for (const auto& t : tokens) ++counts[t];
    return counts;
}

int count_matches(const WordCounts& gt, const WordCounts& out) {
    int matches = 0;
    for (const auto& [word, n] : gt) {
        const auto it = out.find(word);
        if (it != out.end() && it->second == n) ++matches;
    }
    return matches;
}

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

std::string_view category_name(ErrorCategory c) {
    return kCategoryNames[static_cast<std::size_t>(c)];
}

ErrorCategory category_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == name) return static_cast<ErrorCategory>(i);
    }
    throw NotFound("unknown error category '" + std::string(name) + "'");
}

ErrorCategory category_of(const EditScript& s) {
    const bool del = s.deletions > 0, ins = s.insertions > 0, sub = s.substitutions > 0;
    if (del && ins && sub) return ErrorCategory::DelInsSub;
    if (ins && sub) return ErrorCategory::InsSub;
    if (del && sub) return ErrorCategory::DelSub;
    if (del && ins) return ErrorCategory::DelIns;
    if (sub) return ErrorCategory::Sub;
    if (ins) return ErrorCategory::Ins;
    if (del) return ErrorCategory::Del;
    return ErrorCategory::None;
}

EditScript levenshtein(std::string_view gt, std::string_view out) {
    return edit_script(text::scalars(gt), text::scalars(out));
}

int bow_count_matches(std::string_view gt, std::string_view out) {
    return count_matches(count_words(text::tokenize(gt)), count_words(text::tokenize(out)));
}

double cer(std::string_view gt, std::string_view out) {
    const auto a = text::scalars(gt);
    if (a.empty()) throw UndefinedMetric("CER undefined for an empty ground truth");
    return static_cast<double>(edit_distance(a, text::scalars(out))) / static_cast<double>(a.size());
}

double character_accuracy(std::string_view gt, std::string_view out) {
    return (1.0 - cer(gt, out)) * 100.0;
}

double wer(std::string_view gt, std::string_view out) {
    const auto a = text::tokenize(gt);
    if (a.empty()) throw UndefinedMetric("WER undefined for a ground truth without words");
    return static_cast<double>(edit_distance(a, text::tokenize(out))) / static_cast<double>(a.size());
}

double index_bow(std::string_view gt, std::string_view out) {
    const auto gt_counts = count_words(text::tokenize(gt));
    if (gt_counts.empty()) throw UndefinedMetric("index BoW undefined for a ground truth without words");
    const auto out_counts = count_words(text::tokenize(out));
    int found = 0;
    for (const auto& [word, n] : gt_counts) found += out_counts.contains(word) ? 1 : 0;
    return static_cast<double>(found) / static_cast<double>(gt_counts.size());
}

PrecisionRecall precision_recall_f1(std::string_view gt, std::string_view out) {
    const auto gt_tokens = text::tokenize(gt);
    const auto out_tokens = text::tokenize(out);
    const int matches = count_matches(count_words(gt_tokens), count_words(out_tokens));
    PrecisionRecall pr;
    pr.precision = ratio_or_zero(matches, static_cast<double>(out_tokens.size()));
    pr.recall = ratio_or_zero(matches, static_cast<double>(gt_tokens.size()));
    pr.f1 = harmonic(pr.precision, pr.recall);
    return pr;
}

ErrorCategory classify_errors(std::string_view gt, std::string_view out) {
    return category_of(levenshtein(gt, out));
}

MetricRecord measure(std::string_view gt, std::string_view out) {
    const auto gt_chars = text::scalars(gt);
    const auto out_chars = text::scalars(out);
    if (gt_chars.empty()) throw UndefinedMetric("metrics undefined for an empty ground truth");
    const auto gt_tokens = text::tokenize(gt);
    const auto out_tokens = text::tokenize(out);

    MetricRecord rec;
    rec.script = edit_script(gt_chars, out_chars);
    rec.category = category_of(rec.script);
    rec.cer = static_cast<double>(rec.script.distance) / static_cast<double>(gt_chars.size());
    rec.character_accuracy = (1.0 - rec.cer) * 100.0;
    rec.wer = gt_tokens.empty()
                  ? 0.0
                  : static_cast<double>(edit_distance(gt_tokens, out_tokens)) /
                        static_cast<double>(gt_tokens.size());

    const auto gt_counts = count_words(gt_tokens);
    const auto out_counts = count_words(out_tokens);
    rec.bow_count_matches = count_matches(gt_counts, out_counts);
    int found = 0;
    for (const auto& [word, n] : gt_counts) found += out_counts.contains(word) ? 1 : 0;
    rec.index_bow = ratio_or_zero(found, static_cast<double>(gt_counts.size()));
    rec.precision = ratio_or_zero(rec.bow_count_matches, static_cast<double>(out_tokens.size()));
    rec.recall = ratio_or_zero(rec.bow_count_matches, static_cast<double>(gt_tokens.size()));
    rec.f1 = harmonic(rec.precision, rec.recall);
    return rec;
}

int character_count(std::string_view text) { return static_cast<int>(text::scalars(text).size()); }

int distinct_word_count(std::string_view text) {
    return static_cast<int>(count_words(text::tokenize(text)).size());
}

}  // namespace ocrtune
