#include <gtest/gtest.h>

#include <random>

#include "ocrtune/errors.hpp"
#include "ocrtune/metrics.hpp"
#include "ocrtune/text.hpp"
#include "oracles.hpp"

using namespace ocrtune;

namespace {

std::string random_word(std::mt19937& rng, int max_len) {
    const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
    std::string s;
    for (int i = 0; i < len; ++i) s += static_cast<char>('a' + rng() % 3);
    return s;
}

}  // namespace

TEST(Levenshtein, ReferenceCases) {
    EXPECT_EQ(levenshtein("abc", "abc").distance, 0);
    const auto empty = levenshtein("", "abc");
    EXPECT_EQ(empty.distance, 3);
    EXPECT_EQ(empty.insertions, 3);
    EXPECT_EQ(levenshtein("abc", "").deletions, 3);
    EXPECT_EQ(levenshtein("kitten", "sitting").distance, 3);
    EXPECT_EQ(levenshtein("kitten", "sitting").distance,
              oracle::naive_levenshtein(U"kitten", U"sitting"));
}

TEST(Levenshtein, TieOrderPrefersSubstitution) {
    const auto s = levenshtein("ab", "ba");
    EXPECT_EQ(s.distance, 2);
    EXPECT_EQ(s.substitutions, 2);
    EXPECT_EQ(s.insertions + s.deletions, 0);
}

TEST(Levenshtein, CountsSumToDistance) {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto a = random_word(rng, 8), b = random_word(rng, 8);
        const auto s = levenshtein(a, b);
        EXPECT_EQ(s.distance, s.insertions + s.deletions + s.substitutions);
        EXPECT_EQ(s.distance, edit_distance(text::scalars(a), text::scalars(b)));
    }
}

TEST(Levenshtein, MetricProperties) {
    std::mt19937 rng(4);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_word(rng, 7), b = random_word(rng, 7), c = random_word(rng, 7);
        const int ab = levenshtein(a, b).distance;
        EXPECT_EQ(ab, levenshtein(b, a).distance);
        EXPECT_LE(levenshtein(a, c).distance, ab + levenshtein(b, c).distance);
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_EQ(classify_errors(a, b) == ErrorCategory::None, ab == 0);
    }
}

TEST(Levenshtein, DiacriticsCountOnceAfterComposition) {
    // "a" + combining acute vs precomposed U+00E1
    EXPECT_EQ(levenshtein("a\xCC\x81", "\xC3\xA1").distance, 0);
    EXPECT_EQ(character_count("RELAT\xC3\x93RIO"), 9);
    EXPECT_EQ(character_count("RELATO\xCC\x81RIO"), 9);
}

TEST(BagOfWords, CountMatches) {
    EXPECT_EQ(bow_count_matches("a b a", "a a b"), 2);
    EXPECT_EQ(bow_count_matches("a a", "a"), 0);
    EXPECT_EQ(bow_count_matches("the cat the", "the cat the"), 2);
    EXPECT_EQ(bow_count_matches("x y", "z w x y extra"), 2);
}

TEST(BagOfWords, IndexBased) {
    EXPECT_DOUBLE_EQ(index_bow("a b", "a b"), 1.0);
    EXPECT_DOUBLE_EQ(index_bow("a b", "a"), 0.5);
    EXPECT_DOUBLE_EQ(index_bow("a a b", "a"), 0.5);
    EXPECT_THROW(index_bow("   ", "a"), UndefinedMetric);
}

TEST(BagOfWords, TokensKeepCaseAndPunctuation) {
    EXPECT_EQ(bow_count_matches("N.\xC2\xBA 3", "N\xC2\xBA 3"), 1);
    EXPECT_EQ(bow_count_matches("Casa", "casa"), 0);
    EXPECT_EQ(text::tokenize(" a\t b\n\nc ").size(), 3U);
}

TEST(Rates, CharacterErrorRate) {
    EXPECT_DOUBLE_EQ(cer("abcd", "abcd"), 0.0);
    EXPECT_DOUBLE_EQ(character_accuracy("abcd", "abcd"), 100.0);
    EXPECT_DOUBLE_EQ(cer("abcd", "abed"), 0.25);
    EXPECT_DOUBLE_EQ(character_accuracy("abcd", "abed"), 75.0);
    EXPECT_DOUBLE_EQ(character_accuracy("ab", ""), 0.0);
    EXPECT_DOUBLE_EQ(character_accuracy("ab", "xyzw"), -100.0);  // unclamped
    EXPECT_THROW(cer("", "x"), UndefinedMetric);
}

TEST(Rates, WordErrorRate) {
    EXPECT_DOUBLE_EQ(wer("the cat sat", "the cat sat"), 0.0);
    EXPECT_DOUBLE_EQ(wer("the cat sat", "the mat sat"), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(wer("a b", "b"), 0.5);
    EXPECT_THROW(wer("", "b"), UndefinedMetric);
}

TEST(PrecisionRecall, ReferenceCases) {
    const auto same = precision_recall_f1("word", "word");
    EXPECT_DOUBLE_EQ(same.precision, 1.0);
    EXPECT_DOUBLE_EQ(same.recall, 1.0);
    EXPECT_DOUBLE_EQ(same.f1, 1.0);
    const auto extra = precision_recall_f1("a b c", "a b c d");
    EXPECT_DOUBLE_EQ(extra.precision, 0.75);
    EXPECT_DOUBLE_EQ(extra.recall, 1.0);
    EXPECT_NEAR(extra.f1, 6.0 / 7.0, 1e-15);
    const auto none = precision_recall_f1("a b", "");
    EXPECT_DOUBLE_EQ(none.precision + none.recall + none.f1, 0.0);
}

TEST(PrecisionRecall, BoundsAndZeroIff) {
    std::mt19937 rng(9);
    for (int i = 0; i < 300; ++i) {
        std::string gt = "x", out;
        for (int w = 0; w < 4; ++w) gt += " " + random_word(rng, 2);
        for (int w = 0; w < 4; ++w) out += random_word(rng, 2) + " ";
        const auto m = measure(gt, out);
        EXPECT_GE(m.f1, 0.0);
        EXPECT_LE(m.f1, 1.0);
        EXPECT_LE(m.precision, 1.0);
        EXPECT_LE(m.recall, 1.0);
        EXPECT_LE(m.index_bow, 1.0);
        EXPECT_EQ(m.f1 == 0.0, m.bow_count_matches == 0);
        EXPECT_LE(m.bow_count_matches, distinct_word_count(gt));
        EXPECT_EQ(bow_count_matches(gt, gt), distinct_word_count(gt));
        EXPECT_DOUBLE_EQ(m.character_accuracy, (1.0 - m.cer) * 100.0);
    }
}

TEST(Taxonomy, ReferenceExamples) {
    const auto report = classify_errors("RELAT\xC3\x93RIO N.\xC2\xBA 3089", "REL\xC3\x81TORIO N\xC2\xBA 3");
    EXPECT_NE(std::string(category_name(report)).find("del"), std::string::npos);
    EXPECT_EQ(classify_errors("P.I.D.E.", "P.T.D.E."), ErrorCategory::Sub);
    EXPECT_EQ(classify_errors("same", "same"), ErrorCategory::None);
    EXPECT_EQ(classify_errors("abc", "abcd"), ErrorCategory::Ins);
    EXPECT_EQ(classify_errors("abc", "ab"), ErrorCategory::Del);
    EXPECT_EQ(classify_errors("abcd", "xbc"), ErrorCategory::DelSub);
}

TEST(Taxonomy, CategoryFromCounts) {
    EXPECT_EQ(category_of({1, 1, 1, 3}), ErrorCategory::DelInsSub);
    EXPECT_EQ(category_of({1, 0, 1, 2}), ErrorCategory::InsSub);
    EXPECT_EQ(category_of({1, 1, 0, 2}), ErrorCategory::DelIns);
    for (int c = 0; c < kErrorCategoryCount; ++c) {
        const auto cat = static_cast<ErrorCategory>(c);
        EXPECT_EQ(category_from_name(category_name(cat)), cat);
    }
    EXPECT_THROW(category_from_name("swap"), NotFound);
}

TEST(Text, NfcAndInvalidBytes) {
    EXPECT_EQ(text::nfc("e\xCC\x81"), "\xC3\xA9");
    EXPECT_EQ(text::scalars("\xFF").size(), 1U);
    EXPECT_EQ(text::scalars("\xFF")[0], U'�');
    EXPECT_EQ(text::to_utf8(U"ça"), "\xC3\xA7" "a");
}
