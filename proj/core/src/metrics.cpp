#include "hs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "hs/errors.hpp"
#include "hs/text.hpp"
#include "hs/unicode.hpp"

namespace hs {

std::size_t token_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::unordered_map<std::string_view, std::size_t> pool;
  for (const auto& t : b) ++pool[t];
  std::size_t hits = 0;
  for (const auto& t : a) {
    auto it = pool.find(t);
    if (it != pool.end() && it->second > 0) {
      --it->second;
      ++hits;
    }
  }
  return hits;
}

double recall(std::string_view reference, std::string_view response) {
  const auto ref = normalize_tokens(reference);
  if (ref.empty()) throw UndefinedMetric("recall: reference has no tokens");
  return static_cast<double>(token_overlap(ref, normalize_tokens(response))) / static_cast<double>(ref.size());
}

double k_precision(std::string_view response, std::string_view gold_passage) {
  const auto resp = normalize_tokens(response);
  if (resp.empty()) throw UndefinedMetric("k-precision: response has no tokens");
  return static_cast<double>(token_overlap(resp, normalize_tokens(gold_passage))) / static_cast<double>(resp.size());
}

namespace {

std::unordered_map<std::string, const DatasetRecord*> index_records(std::span<const DatasetRecord> records) {
  std::unordered_map<std::string, const DatasetRecord*> out;
  for (const auto& r : records) {
    if (!out.emplace(r.id, &r).second) throw InvalidArgument("duplicate record id: " + r.id);
  }
  return out;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

struct Accumulator {
  std::size_t count = 0;
  std::size_t excluded = 0;
  double kp_sum = 0.0;
  double rec_sum = 0.0;

  void add(std::string_view text, std::string_view gold) {
    try {
      const double kp = k_precision(text, gold);
      const double rc = recall(gold, text);
      kp_sum += kp;
      rec_sum += rc;
      ++count;
    } catch (const UndefinedMetric&) {
      ++excluded;
    }
  }

  TokenMetricSummary summary() const {
    TokenMetricSummary s;
    s.count = count;
    s.excluded = excluded;
    if (count) {
      s.k_precision = kp_sum / static_cast<double>(count);
      s.recall = rec_sum / static_cast<double>(count);
    }
    return s;
  }
};

}  // namespace

DeclineMetrics decline_metrics(std::span<const PipelineAnswer> results, std::span<const DatasetRecord> records) {
  const auto by_id = index_records(records);
  if (results.size() != records.size())
    throw InvalidArgument("decline metrics: " + std::to_string(results.size()) + " results for " +
                          std::to_string(records.size()) + " records");
  std::unordered_set<std::string> seen;
  DeclineMetrics m;
  for (const auto& a : results) {
    const auto it = by_id.find(a.question_id);
    if (it == by_id.end()) throw InvalidArgument("decline metrics: no record for result id " + a.question_id);
    if (!seen.insert(a.question_id).second) throw InvalidArgument("decline metrics: duplicate result id " + a.question_id);
    const bool unanswerable = it->second->unanswerable;
    if (a.declined && unanswerable) ++m.true_positive;
    else if (a.declined) ++m.false_positive;
    else if (unanswerable) ++m.false_negative;
    else ++m.true_negative;
  }
  m.precision = ratio(m.true_positive, m.true_positive + m.false_positive);
  m.recall = ratio(m.true_positive, m.true_positive + m.false_negative);
  if (m.precision && m.recall)
    m.f1 = ratio(2 * m.true_positive, 2 * m.true_positive + m.false_positive + m.false_negative);
  return m;
}

std::string_view to_string(SubstringRelation r) {
  switch (r) {
    case SubstringRelation::equal: return "equal";
    case SubstringRelation::passage_is_substring: return "passage_is_substring";
    case SubstringRelation::passage_is_superstring: return "passage_is_superstring";
    case SubstringRelation::neither: return "neither";
  }
  return "unknown";
}

std::string highlight_text(const HighlightSet& hs, const DocumentStore& store) {
  std::string out;
  for (const auto& s : hs.spans) {
    if (!out.empty()) out.push_back(' ');
    out += store.lookup(s.document_id).slice(s.start, s.end);
  }
  return out;
}

SubstringRelation substring_relation(const HighlightSet& hs, const DocumentStore& store, std::string_view gold_passage) {
  const auto passage = unicode::collapse_whitespace(gold_passage);
  if (passage.empty()) throw InvalidArgument("substring relation needs a non-empty gold passage");
  const auto highlighted = unicode::collapse_whitespace(highlight_text(hs, store));
  if (highlighted.empty()) return SubstringRelation::neither;
  if (highlighted == passage) return SubstringRelation::equal;
  if (highlighted.find(passage) != std::string::npos) return SubstringRelation::passage_is_substring;
  if (passage.find(highlighted) != std::string::npos) return SubstringRelation::passage_is_superstring;
  return SubstringRelation::neither;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("pearson: series differ in length");
  if (xs.size() < 2) throw InvalidArgument("pearson: need at least two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetric("pearson: constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::map<std::string, TokenMetricSummary> guessed_question_metrics(std::span<const PipelineAnswer> results,
                                                                  std::span<const DatasetRecord> records) {
  const auto by_id = index_records(records);
  std::map<std::string, Accumulator> acc;
  for (const auto& a : results) {
    auto& slot = acc[a.pipeline_name];
    const auto it = by_id.find(a.question_id);
    if (it == by_id.end()) throw InvalidArgument("guessed-question metrics: no record for " + a.question_id);
    if (!a.guessed_question) {
      ++slot.excluded;
      continue;
    }
    slot.add(*a.guessed_question, it->second->question);
  }
  std::map<std::string, TokenMetricSummary> out;
  for (const auto& [name, a] : acc) out[name] = a.summary();
  return out;
}

std::map<std::string, TokenMetricSummary> highlight_passage_metrics(std::span<const PipelineAnswer> results,
                                                                   std::span<const DatasetRecord> records,
                                                                   const DocumentStore& store) {
  const auto by_id = index_records(records);
  std::map<std::string, Accumulator> acc;
  for (const auto& a : results) {
    auto& slot = acc[a.pipeline_name];
    const auto it = by_id.find(a.question_id);
    if (it == by_id.end()) throw InvalidArgument("highlight metrics: no record for " + a.question_id);
    if (!a.highlights || !it->second->gold_passage) {
      ++slot.excluded;
      continue;
    }
    slot.add(highlight_text(*a.highlights, store), *it->second->gold_passage);
  }
  std::map<std::string, TokenMetricSummary> out;
  for (const auto& [name, a] : acc) out[name] = a.summary();
  return out;
}

std::map<std::string, TokenMetricSummary> answer_metrics(std::span<const PipelineAnswer> results,
                                                        std::span<const DatasetRecord> records) {
  const auto by_id = index_records(records);
  struct Acc {
    std::size_t n_rec = 0, n_kp = 0, excluded = 0;
    double rec = 0.0, kp = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& a : results) {
    auto& slot = acc[a.pipeline_name];
    const auto it = by_id.find(a.question_id);
    if (it == by_id.end()) throw InvalidArgument("answer metrics: no record for " + a.question_id);
    const auto& r = *it->second;
    if (a.declined || r.unanswerable) {
      ++slot.excluded;
      continue;
    }
    try {
      slot.rec += recall(r.reference_answer, a.answer);
      ++slot.n_rec;
      if (r.gold_passage) {
        slot.kp += k_precision(a.answer, *r.gold_passage);
        ++slot.n_kp;
      }
    } catch (const UndefinedMetric&) {
      ++slot.excluded;
    }
  }
  std::map<std::string, TokenMetricSummary> out;
  for (const auto& [name, a] : acc) {
    TokenMetricSummary s;
    s.count = a.n_rec;
    s.excluded = a.excluded;
    if (a.n_rec) s.recall = a.rec / static_cast<double>(a.n_rec);
    if (a.n_kp) s.k_precision = a.kp / static_cast<double>(a.n_kp);
    out[name] = s;
  }
  return out;
}

std::map<std::string, std::map<std::string, std::size_t>> substring_relation_counts(
    std::span<const PipelineAnswer> results, std::span<const DatasetRecord> records, const DocumentStore& store) {
  const auto by_id = index_records(records);
  std::map<std::string, std::map<std::string, std::size_t>> out;
  for (const auto& a : results) {
    const auto it = by_id.find(a.question_id);
    if (it == by_id.end() || !a.highlights || !it->second->gold_passage) continue;
    auto& counts = out[a.pipeline_name];
    if (counts.empty()) {
      for (auto r : {SubstringRelation::equal, SubstringRelation::passage_is_substring,
                     SubstringRelation::passage_is_superstring, SubstringRelation::neither})
        counts[std::string(to_string(r))] = 0;
    }
    ++counts[std::string(to_string(substring_relation(*a.highlights, store, *it->second->gold_passage)))];
  }
  return out;
}

}  // namespace hs
