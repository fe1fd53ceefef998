#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hs/domain.hpp"

namespace hs {

/// Share of reference tokens matched by response tokens (multiset).
/// Throws UndefinedMetric when the reference has no tokens.
double recall(std::string_view reference, std::string_view response);

/// Share of response tokens found in the gold passage (multiset).
/// Throws UndefinedMetric when the response has no tokens.
double k_precision(std::string_view response, std::string_view gold_passage);

/// Multiset intersection size of two token lists.
std::size_t token_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct DeclineMetrics {
  std::size_t true_positive = 0;   // declined and unanswerable
  std::size_t false_positive = 0;  // declined but answerable
  std::size_t false_negative = 0;  // answered but unanswerable
  std::size_t true_negative = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

/// Declining treated as a prediction of "unanswerable". Throws
/// InvalidArgument unless results and records cover the same ids.
DeclineMetrics decline_metrics(std::span<const PipelineAnswer> results, std::span<const DatasetRecord> records);

enum class SubstringRelation { equal, passage_is_substring, passage_is_superstring, neither };

std::string_view to_string(SubstringRelation r);

/// Compares the gold passage with the highlighted text (spans sliced from
/// the store and joined in order), both with whitespace collapsed. An empty
/// highlight set is `neither`.
SubstringRelation substring_relation(const HighlightSet& hs, const DocumentStore& store, std::string_view gold_passage);

/// Highlighted text: sliced spans in order, separated by single spaces.
std::string highlight_text(const HighlightSet& hs, const DocumentStore& store);

/// Sample Pearson correlation. Throws InvalidArgument on mismatched or short
/// series and UndefinedMetric when either series is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Mean K-Precision and Recall of some text against a gold text, with the
/// number of items that could not be scored.
struct TokenMetricSummary {
  std::size_t count = 0;
  std::size_t excluded = 0;
  std::optional<double> k_precision;
  std::optional<double> recall;
};

/// Per pipeline: guessed question vs the true question (the question is
/// the gold text for K-Precision and the reference for Recall).
std::map<std::string, TokenMetricSummary> guessed_question_metrics(std::span<const PipelineAnswer> results,
                                                                  std::span<const DatasetRecord> records);

/// Per pipeline: highlighted text vs the gold passage. Records without a
/// gold passage, and answers without highlights, are excluded.
std::map<std::string, TokenMetricSummary> highlight_passage_metrics(std::span<const PipelineAnswer> results,
                                                                   std::span<const DatasetRecord> records,
                                                                   const DocumentStore& store);

/// Per pipeline: answer Recall against the reference answer and K-Precision
/// against the gold passage, over answerable records that were not declined.
std::map<std::string, TokenMetricSummary> answer_metrics(std::span<const PipelineAnswer> results,
                                                        std::span<const DatasetRecord> records);

/// Per pipeline: how often each substring relation occurs.
std::map<std::string, std::map<std::string, std::size_t>> substring_relation_counts(
    std::span<const PipelineAnswer> results, std::span<const DatasetRecord> records, const DocumentStore& store);

}  // namespace hs
