#include "hs/judge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <regex>

#include "hs/errors.hpp"
#include "hs/unicode.hpp"
#include "prompts.hpp"

namespace hs {

namespace {

constexpr int kJudgeRetries = 2;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

}  // namespace

std::string_view to_string(JudgeKind kind) {
  switch (kind) {
    case JudgeKind::correctness: return "correctness";
    case JudgeKind::relevance: return "relevance";
    case JudgeKind::quality: return "quality";
  }
  return "unknown";
}

std::optional<JudgeKind> parse_judge_kind(std::string_view s) {
  for (auto k : {JudgeKind::correctness, JudgeKind::relevance, JudgeKind::quality}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

JudgeScale scale_of(JudgeKind kind) {
  switch (kind) {
    case JudgeKind::correctness: return {0, 1};
    case JudgeKind::relevance: return {0, 3};
    case JudgeKind::quality: return {1, 10};
  }
  return {};
}

std::optional<double> parse_score(std::string_view reply) {
  static const std::regex labelled(R"(score\s*[:=]?\s*(-?\d+(?:\.\d+)?))", std::regex::icase);
  static const std::regex bare(R"((-?\d+(?:\.\d+)?))");
  const std::string text(reply);
  std::smatch m;
  if (std::regex_search(text, m, labelled) || std::regex_search(text, m, bare)) return std::stod(m[1].str());
  return std::nullopt;
}

JudgeVerdict judge(JudgeKind kind, std::string_view question, std::string_view answer, std::string_view reference,
                   Gateway& gateway) {
  ChatRequest req;
  req.role = RoleTag::judge;
  std::string user = "Question: " + std::string(question);
  switch (kind) {
    case JudgeKind::correctness:
      req.messages.push_back({MessageRole::system, std::string(prompts::kJudgeCorrectness)});
      user += "\nReference: " + std::string(reference) + "\nResponse: " + std::string(answer);
      break;
    case JudgeKind::relevance:
      req.messages.push_back({MessageRole::system, std::string(prompts::kJudgeRelevance)});
      user += "\nResponse: " + std::string(answer);
      break;
    case JudgeKind::quality:
      req.messages.push_back({MessageRole::system, std::string(prompts::kJudgeQuality)});
      user += "\nResponse: " + std::string(answer);
      break;
  }
  req.messages.push_back({MessageRole::user, std::move(user)});

  const auto scale = scale_of(kind);
  for (int attempt = 0; attempt <= kJudgeRetries; ++attempt) {
    const auto reply = gateway.complete(req);
    if (const auto score = parse_score(reply)) {
      JudgeVerdict v;
      v.kind = kind;
      const auto rounded = static_cast<long long>(std::llround(*score));
      v.score = static_cast<int>(std::clamp<long long>(rounded, scale.min, scale.max));
      v.clamped = rounded < scale.min || rounded > scale.max;
      v.explanation = unicode::trim(reply);
      return v;
    }
    req.messages.push_back({MessageRole::user, "Your reply did not contain a score. Reply with \"Score: N\" where N is "
                                                   "an integer from " + std::to_string(scale.min) + " to " +
                                                   std::to_string(scale.max) + "."});
  }
  throw JudgeFailure(std::string(to_string(kind)) + " judge gave no readable score");
}

std::string_view to_string(BattleResult r) {
  switch (r) {
    case BattleResult::win_a: return "win_a";
    case BattleResult::win_b: return "win_b";
    case BattleResult::tie: return "tie";
    case BattleResult::both_unacceptable: return "both_unacceptable";
  }
  return "unknown";
}

std::optional<BattleResult> parse_battle_result(std::string_view s) {
  for (auto r : {BattleResult::win_a, BattleResult::win_b, BattleResult::tie, BattleResult::both_unacceptable}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<PresentedVerdict> parse_verdict(std::string_view reply) {
  static const std::regex labelled(R"(verdict\s*[:=]?\s*\**\s*(A|B|TIE|NEITHER)\b)", std::regex::icase);
  std::string token;
  std::smatch m;
  const std::string text(reply);
  if (std::regex_search(text, m, labelled)) {
    token = upper(m[1].str());
  } else {
    token = upper(unicode::trim(reply));
    while (!token.empty() && (token.back() == '.' || token.back() == '!')) token.pop_back();
  }
  if (token == "A") return PresentedVerdict::first;
  if (token == "B") return PresentedVerdict::second;
  if (token == "TIE") return PresentedVerdict::tie;
  if (token == "NEITHER") return PresentedVerdict::neither;
  return std::nullopt;
}

bool presentation_swapped(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return (rng() & 1U) != 0;
}

ChatRequest comparison_request(std::string_view question, std::string_view first, std::string_view second) {
  ChatRequest req;
  req.role = RoleTag::judge;
  req.messages.push_back({MessageRole::system, std::string(prompts::kCompare)});
  req.messages.push_back({MessageRole::user, "Question: " + std::string(question) + "\n\nAnswer A:\n" +
                                                 std::string(first) + "\n\nAnswer B:\n" + std::string(second)});
  return req;
}

BattleOutcome compare(const ComparisonInput& input, Gateway& gateway, std::uint64_t seed) {
  if (input.side_a == input.side_b) throw InvalidArgument("comparison needs two different sides");
  const bool swapped = presentation_swapped(seed);
  const auto& first = swapped ? input.answer_b : input.answer_a;
  const auto& second = swapped ? input.answer_a : input.answer_b;
  auto req = comparison_request(input.question, first, second);

  for (int attempt = 0; attempt <= kJudgeRetries; ++attempt) {
    const auto reply = gateway.complete(req);
    if (const auto v = parse_verdict(reply)) {
      BattleOutcome out{input.question_id, input.side_a, input.side_b, BattleResult::tie, swapped};
      switch (*v) {
        case PresentedVerdict::first: out.result = swapped ? BattleResult::win_b : BattleResult::win_a; break;
        case PresentedVerdict::second: out.result = swapped ? BattleResult::win_a : BattleResult::win_b; break;
        case PresentedVerdict::tie: out.result = BattleResult::tie; break;
        case PresentedVerdict::neither: out.result = BattleResult::both_unacceptable; break;
      }
      return out;
    }
    req.messages.push_back(
        {MessageRole::user, "Your reply did not contain a verdict. Reply with \"Verdict: X\" where X is A, B, TIE or NEITHER."});
  }
  throw JudgeFailure("comparison judge gave no readable verdict for question " + input.question_id);
}

}  // namespace hs
