#include "hs/elo.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "hs/errors.hpp"

namespace hs {

void EloParams::check() const {
  if (!(k > 0.0)) throw InvalidArgument("Elo K factor must be positive");
  if (permutations < 1) throw InvalidArgument("Elo needs at least one permutation");
}

double expected_score(double ra, double rb) { return 1.0 / (1.0 + std::pow(10.0, (rb - ra) / 400.0)); }

namespace {

// Unbiased draw from [0, n) without relying on std::uniform_int_distribution,
// whose output differs between standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(draw_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

double score_for_a(BattleResult r) {
  switch (r) {
    case BattleResult::win_a: return 1.0;
    case BattleResult::win_b: return 0.0;
    case BattleResult::tie:
    case BattleResult::both_unacceptable: return 0.5;
  }
  return 0.5;
}

}  // namespace

EloTable elo(std::span<const BattleOutcome> battles, const EloParams& params,
             std::span<const std::string> participants) {
  params.check();
  EloTable table;
  for (const auto& p : participants) table.ratings.emplace(p, 0.0);
  for (const auto& b : battles) {
    if (b.side_a == b.side_b) throw InvalidArgument("battle with identical sides: " + b.side_a);
    table.ratings.emplace(b.side_a, 0.0);
    table.ratings.emplace(b.side_b, 0.0);
    if (b.result == BattleResult::both_unacceptable) {
      ++table.both_unacceptable[b.side_a];
      ++table.both_unacceptable[b.side_b];
    }
  }

  std::mt19937_64 rng(params.seed);
  std::vector<std::size_t> order(battles.size());
  std::map<std::string, double> current;
  for (int round = 0; round < params.permutations; ++round) {
    for (auto& [name, r] : table.ratings) current[name] = params.initial;
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);
    for (const auto i : order) {
      const auto& b = battles[i];
      double& ra = current[b.side_a];
      double& rb = current[b.side_b];
      const double delta = params.k * (score_for_a(b.result) - expected_score(ra, rb));
      ra += delta;
      rb -= delta;
    }
    for (auto& [name, r] : table.ratings) r += current[name];
  }
  for (auto& [name, r] : table.ratings) r /= static_cast<double>(params.permutations);
  return table;
}

std::optional<double> WinRecord::win_rate() const {
  if (wins + losses == 0) return std::nullopt;
  return static_cast<double>(wins) / static_cast<double>(wins + losses);
}

std::map<std::string, WinRecord> win_records(std::span<const BattleOutcome> battles) {
  std::map<std::string, WinRecord> out;
  for (const auto& b : battles) {
    auto& a = out[b.side_a];
    auto& c = out[b.side_b];
    switch (b.result) {
      case BattleResult::win_a: ++a.wins; ++c.losses; break;
      case BattleResult::win_b: ++c.wins; ++a.losses; break;
      case BattleResult::tie: ++a.ties; ++c.ties; break;
      case BattleResult::both_unacceptable: ++a.both_unacceptable; ++c.both_unacceptable; break;
    }
  }
  return out;
}

std::map<std::string, std::map<std::string, std::size_t>> head_to_head(std::span<const BattleOutcome> battles) {
  std::map<std::string, std::map<std::string, std::size_t>> out;
  for (const auto& b : battles) {
    out[b.side_a][b.side_b] += 0;
    out[b.side_b][b.side_a] += 0;
    if (b.result == BattleResult::win_a) ++out[b.side_a][b.side_b];
    if (b.result == BattleResult::win_b) ++out[b.side_b][b.side_a];
  }
  return out;
}

WinsTable wins_table(std::span<const ScoredVerdict> verdicts) {
  // kind -> question -> pipeline -> score
  std::map<std::string, std::map<std::string, std::map<std::string, int>>> grid;
  std::map<std::string, std::set<std::string>> pipelines;
  for (const auto& v : verdicts) {
    const std::string kind(to_string(v.verdict.kind));
    grid[kind][v.question_id][v.pipeline] = v.verdict.score;
    pipelines[kind].insert(v.pipeline);
  }
  WinsTable out;
  for (const auto& [kind, questions] : grid) {
    const auto& names = pipelines[kind];
    auto& wins = out.wins[kind];
    for (const auto& n : names) wins[n] = 0;
    out.questions[kind] = 0;
    out.excluded[kind] = 0;
    for (const auto& [qid, scores] : questions) {
      if (scores.size() != names.size()) {
        ++out.excluded[kind];
        continue;
      }
      ++out.questions[kind];
      int best = std::numeric_limits<int>::min();
      for (const auto& [p, s] : scores) best = std::max(best, s);
      for (const auto& [p, s] : scores) {
        if (s == best) ++wins[p];
      }
    }
  }
  return out;
}

}  // namespace hs
