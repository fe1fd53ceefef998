#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hs/gateway.hpp"

namespace hs {

enum class JudgeKind { correctness, relevance, quality };

std::string_view to_string(JudgeKind kind);
std::optional<JudgeKind> parse_judge_kind(std::string_view s);

struct JudgeScale {
  int min = 0;
  int max = 0;
};
JudgeScale scale_of(JudgeKind kind);

struct JudgeVerdict {
  JudgeKind kind = JudgeKind::correctness;
  int score = 0;
  std::string explanation;
  bool clamped = false;  // the model's number lay outside the scale
  friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

/// Number from a judge reply: the value after "Score:" when present,
/// otherwise the first number in the text.
std::optional<double> parse_score(std::string_view reply);

/// Rates `answer` with the `kind` judge. Correctness compares against
/// `reference`; the other two judges ignore it. Throws JudgeFailure when no
/// score can be read after two corrective retries.
JudgeVerdict judge(JudgeKind kind, std::string_view question, std::string_view answer, std::string_view reference,
                   Gateway& gateway);

enum class BattleResult { win_a, win_b, tie, both_unacceptable };

std::string_view to_string(BattleResult r);
std::optional<BattleResult> parse_battle_result(std::string_view s);

struct BattleOutcome {
  std::string question_id;
  std::string side_a;
  std::string side_b;
  BattleResult result = BattleResult::tie;
  bool presented_order_swapped = false;
  friend bool operator==(const BattleOutcome&, const BattleOutcome&) = default;
};

struct ComparisonInput {
  std::string question_id;
  std::string question;
  std::string side_a;
  std::string answer_a;
  std::string side_b;
  std::string answer_b;
};

/// Verdict letter relative to presentation: A means the first shown answer won.
enum class PresentedVerdict { first, second, tie, neither };
std::optional<PresentedVerdict> parse_verdict(std::string_view reply);

/// Whether a comparison seeded with `seed` shows side B first.
bool presentation_swapped(std::uint64_t seed);

/// Pairwise comparison with a seeded presentation order; the verdict is
/// mapped back to the real sides. Throws JudgeFailure on an unreadable verdict.
BattleOutcome compare(const ComparisonInput& input, Gateway& gateway, std::uint64_t seed);

/// The comparison request for a fixed presentation order.
ChatRequest comparison_request(std::string_view question, std::string_view first, std::string_view second);

}  // namespace hs
