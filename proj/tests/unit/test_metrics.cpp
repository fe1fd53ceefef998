#include <random>

#include <gtest/gtest.h>

#include "hs/errors.hpp"
#include "hs/metrics.hpp"
#include "hs/text.hpp"
#include "hs/unicode.hpp"
#include "oracles.hpp"

using namespace hs;

namespace {

const std::vector<std::string> kVocab = {"cat", "sat", "mat", "dog", "ran", "far", "red", "blue"};

std::string random_sentence(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<std::string> extras = {"The", "a", "an", ",", "!", "  "};
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 4 == 0) s += extras[rng() % extras.size()] + " ";
    std::string w = kVocab[rng() % kVocab.size()];
    if (rng() % 3 == 0) w[0] = static_cast<char>(std::toupper(w[0]));
    s += w + (rng() % 5 == 0 ? ". " : " ");
  }
  return s;
}

}  // namespace

TEST(Tokens, Normalization) {
  EXPECT_EQ(normalize_tokens("The cat sat."), (std::vector<std::string>{"cat", "sat"}));
  EXPECT_TRUE(normalize_tokens("").empty());
  EXPECT_EQ(normalize_tokens("An apple, A pear & THE plum!"), (std::vector<std::string>{"apple", "pear", "plum"}));
  EXPECT_EQ(normalize_tokens("\xEF\xAC\x81ne \xE2\x80\x9Cquoted\xE2\x80\x9D"),
            (std::vector<std::string>{"fine", "quoted"}));
  EXPECT_EQ(normalize_tokens("theatre another"), (std::vector<std::string>{"theatre", "another"}));
}

TEST(Tokens, NormalizationIsAFixpoint) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto toks = normalize_tokens(random_sentence(rng, 1 + rng() % 10));
    std::string joined;
    for (const auto& t : toks) joined += t + " ";
    EXPECT_EQ(normalize_tokens(joined), toks);
  }
}

TEST(TokenMetrics, SimpleCases) {
  EXPECT_DOUBLE_EQ(recall("red cat", "red cat"), 1.0);
  EXPECT_DOUBLE_EQ(recall("red cat", "blue dog"), 0.0);
  EXPECT_DOUBLE_EQ(recall("cat cat", "cat"), 0.5);
  EXPECT_DOUBLE_EQ(k_precision("cat cat dog", "cat dog"), 2.0 / 3.0);
  EXPECT_THROW(recall("the", "cat"), UndefinedMetric);
  EXPECT_THROW(k_precision("...", "cat"), UndefinedMetric);
}

TEST(TokenMetrics, MatchMultisetOracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto ref = random_sentence(rng, 1 + rng() % 12);
    const auto resp = random_sentence(rng, 1 + rng() % 12);
    const auto rt = normalize_tokens(ref);
    const auto st = normalize_tokens(resp);
    EXPECT_EQ(recall(ref, resp), static_cast<double>(oracle::multiset_hits(rt, st)) / static_cast<double>(rt.size()));
    EXPECT_EQ(k_precision(resp, ref),
              static_cast<double>(oracle::multiset_hits(st, rt)) / static_cast<double>(st.size()));
  }
}

TEST(TokenMetrics, PermutingResponseTokensChangesNothing) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto ref = random_sentence(rng, 6);
    auto toks = normalize_tokens(random_sentence(rng, 8));
    std::string a, b;
    for (const auto& t : toks) a += t + " ";
    std::shuffle(toks.begin(), toks.end(), rng);
    for (const auto& t : toks) b += t + " ";
    EXPECT_EQ(recall(ref, a), recall(ref, b));
    EXPECT_EQ(k_precision(a, ref), k_precision(b, ref));
  }
}

namespace {

PipelineAnswer answer(std::string id, bool declined) {
  PipelineAnswer a;
  a.question_id = std::move(id);
  a.pipeline_name = "p";
  a.declined = declined;
  a.answer = declined ? std::string(kDeclineMessage) : "something";
  return a;
}

DatasetRecord record(std::string id, bool unanswerable) {
  return {std::move(id), "q?", "ref", std::nullopt, Document::make("d", "text"), unanswerable};
}

}  // namespace

TEST(DeclineMetrics, EdgeCases) {
  std::vector<PipelineAnswer> perfect = {answer("1", true), answer("2", false)};
  std::vector<DatasetRecord> recs = {record("1", true), record("2", false)};
  auto m = decline_metrics(perfect, recs);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);

  std::vector<PipelineAnswer> never = {answer("1", false), answer("2", false)};
  m = decline_metrics(never, recs);
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_FALSE(m.f1.has_value());

  std::vector<PipelineAnswer> other = {answer("1", true), answer("3", false)};
  EXPECT_THROW(decline_metrics(other, recs), InvalidArgument);
}

TEST(SubstringRelation, ClassifiesAgainstContainmentOracle) {
  const auto doc = Document::make("d", "One two three four five six seven eight nine ten eleven twelve.");
  DocumentStore s;
  s.add(doc);
  const auto len = doc.length();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const std::size_t hb = rng() % (len - 1), he = hb + 1 + rng() % (len - hb - 1);
    const std::size_t gb = rng() % (len - 1), ge = gb + 1 + rng() % (len - gb - 1);
    HighlightSet hs{{Span{"d", hb, he, doc.slice(hb, he)}}, {100}};
    const auto h = unicode::collapse_whitespace(doc.slice(hb, he));
    const auto g = unicode::collapse_whitespace(doc.slice(gb, ge));
    if (g.empty() || h.empty()) continue;
    SubstringRelation want = SubstringRelation::neither;
    if (h == g) want = SubstringRelation::equal;
    else if (h.find(g) != std::string::npos) want = SubstringRelation::passage_is_substring;
    else if (g.find(h) != std::string::npos) want = SubstringRelation::passage_is_superstring;
    EXPECT_EQ(substring_relation(hs, s, doc.slice(gb, ge)), want) << i;
  }
  EXPECT_EQ(substring_relation(HighlightSet{}, s, "One two"), SubstringRelation::neither);
}

TEST(Pearson, MatchesDirectFormula) {
  std::vector<double> x = {1, 2, 3, 4}, y2, yn;
  for (double v : x) {
    y2.push_back(2 * v);
    yn.push_back(-v);
  }
  EXPECT_DOUBLE_EQ(pearson(x, y2), 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, yn), -1.0);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 1, 1, 1}), UndefinedMetric);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{2}), InvalidArgument);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = u(rng);
      b[i] = 0.5 * a[i] + u(rng);
    }
    EXPECT_NEAR(pearson(a, b), oracle::pearson(a, b), 1e-12);
  }
}

TEST(GuessedQuestion, IdenticalGuessScoresOne) {
  auto a = answer("1", false);
  a.guessed_question = "q?";
  std::vector<PipelineAnswer> rs = {a, answer("2", false)};
  std::vector<DatasetRecord> recs = {record("1", false), record("2", false)};
  recs[0].question = "What is q?";
  recs[1].question = "Other?";
  rs[0].guessed_question = "What is q?";
  const auto m = guessed_question_metrics(rs, recs).at("p");
  EXPECT_EQ(m.count, 1u);
  EXPECT_EQ(m.excluded, 1u);
  EXPECT_EQ(m.k_precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
}
