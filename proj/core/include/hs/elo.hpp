#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hs/judge.hpp"

namespace hs {

struct EloParams {
  double initial = 1000.0;
  double k = 16.0;
  int permutations = 10;
  std::uint64_t seed = 0;

  void check() const;
};

struct EloTable {
  std::map<std::string, double> ratings;
  /// Battles each pipeline took part in where the judge accepted neither answer.
  std::map<std::string, std::size_t> both_unacceptable;
};

/// Probability that a player rated `ra` beats one rated `rb`.
double expected_score(double ra, double rb);

/// Online Elo over the battles, replayed in `permutations` seeded shuffles
/// and averaged. Win scores 1, tie and both-unacceptable score 0.5. Every
/// name in `participants` gets a rating even without battles.
EloTable elo(std::span<const BattleOutcome> battles, const EloParams& params,
             std::span<const std::string> participants = {});

struct WinRecord {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
  std::size_t both_unacceptable = 0;

  /// wins / (wins + losses); ties of either kind are left out.
  std::optional<double> win_rate() const;
};

std::map<std::string, WinRecord> win_records(std::span<const BattleOutcome> battles);

/// head_to_head[x][y]: battles x won against y.
std::map<std::string, std::map<std::string, std::size_t>> head_to_head(std::span<const BattleOutcome> battles);

struct ScoredVerdict {
  std::string pipeline;
  std::string question_id;
  JudgeVerdict verdict;
};

struct WinsTable {
  /// judge kind -> pipeline -> questions where the pipeline scored the maximum (ties included)
  std::map<std::string, std::map<std::string, std::size_t>> wins;
  std::map<std::string, std::size_t> questions;  // questions counted per judge kind
  std::map<std::string, std::size_t> excluded;   // questions missing some pipeline's score
};

WinsTable wins_table(std::span<const ScoredVerdict> verdicts);

}  // namespace hs
