#include <random>

#include <gtest/gtest.h>

#include "hs/errors.hpp"
#include "hs/similarity.hpp"
#include "hs/unicode.hpp"
#include "oracles.hpp"

using namespace hs;

namespace {

std::u32string random_text(std::mt19937_64& rng, std::size_t n, char32_t alphabet) {
  std::u32string s(n, U'a');
  for (auto& c : s) c = U'a' + static_cast<char32_t>(rng() % alphabet);
  return s;
}

}  // namespace

TEST(Lcs, MatchesDynamicProgrammingOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 400; ++trial) {
    // Lengths cross the 64-symbol word boundary of the bit-parallel kernel.
    const auto a = random_text(rng, rng() % 150, 2 + rng() % 6);
    const auto b = random_text(rng, rng() % 150, 2 + rng() % 6);
    ASSERT_EQ(lcs_length(a, b), oracle::lcs(a, b)) << trial;
    ASSERT_EQ(indel_distance(a, b), oracle::indel(a, b));
  }
}

TEST(Lcs, EdgeCases) {
  EXPECT_EQ(lcs_length(U"", U"abc"), 0u);
  EXPECT_EQ(lcs_length(U"abc", U"abc"), 3u);
  EXPECT_EQ(indel_distance(U"abc", U"xyz"), 6u);
  EXPECT_DOUBLE_EQ(indel_score(0, 0), 100.0);
  EXPECT_DOUBLE_EQ(indel_score(1, 4), 75.0);
}

TEST(Similarity, NfcFormsCompareEqual) {
  EXPECT_DOUBLE_EQ(similarity("cafe\xCC\x81", "caf\xC3\xA9"), 100.0);
  EXPECT_DOUBLE_EQ(similarity("abcd", "abce"), 75.0);
}

TEST(WindowBand, RoundsOutwardWithinLimits) {
  const auto b = window_band(10, 1, 100);
  EXPECT_EQ(b.min, 8u);
  EXPECT_EQ(b.max, 12u);
  const auto c = window_band(7, 1, 100);  // 5.6 .. 8.4
  EXPECT_EQ(c.min, 6u);
  EXPECT_EQ(c.max, 8u);
  EXPECT_EQ(window_band(10, 9, 100).min, 9u);
  EXPECT_EQ(window_band(10, 1, 9).max, 9u);
  EXPECT_TRUE(window_band(10, 20, 100).empty());
}

TEST(BestWindow, MatchesBandRestrictedBruteForce) {
  std::mt19937_64 rng(2);
  HighlightLimits lim;
  lim.threshold = 0;
  lim.min_length = 1;
  for (int trial = 0; trial < 300; ++trial) {
    const auto text = random_text(rng, 1 + rng() % 60, 3);
    const auto query = random_text(rng, 1 + rng() % 20, 3);
    const auto band = window_band(query.size(), 1, text.size());
    const auto got = best_window(text, query, lim);
    if (band.empty()) {
      EXPECT_FALSE(got.has_value());
      continue;
    }
    // Brute force with the documented tie order: lower start, then shorter.
    oracle::Ratio best{0, 1};
    std::size_t bs = 0, bl = 0;
    bool first = true;
    for (std::size_t s = 0; s < text.size(); ++s) {
      for (std::size_t len = band.min; len <= band.max && s + len <= text.size(); ++len) {
        const auto r = oracle::ratio(text.substr(s, len), query);
        if (first || best < r) {
          best = r;
          bs = s;
          bl = len;
          first = false;
        }
      }
    }
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(got->start, bs) << trial;
    EXPECT_EQ(got->end, bs + bl) << trial;
    EXPECT_EQ(got->score, indel_score(best.den - best.num, best.den));
  }
}

TEST(BestWindow, ThresholdFilters) {
  HighlightLimits lim;
  lim.min_length = 1;
  EXPECT_FALSE(best_window(U"abcdefgh", U"xyz", lim).has_value());
  const auto m = best_window(U"xx hello world yy", U"hello world", lim);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->start, 3u);
  EXPECT_EQ(m->end, 14u);
  EXPECT_DOUBLE_EQ(m->score, 100.0);
}

TEST(BestSpan, ReturnsCodePointOffsetsAndText) {
  const auto doc = Document::make("d", "Préambule. Le château fut construit en 1520 par le roi.");
  HighlightLimits lim;
  lim.min_length = 5;
  const auto s = best_span(doc, "Le chateau fut construit en 1520", lim);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->span.document_id, "d");
  EXPECT_EQ(s->span.text, doc.slice(s->span.start, s->span.end));
  EXPECT_EQ(s->span.start, 11u);
  EXPECT_GE(s->score, 95.0);
  EXPECT_THROW(best_span(doc, "", lim), InvalidArgument);
}
