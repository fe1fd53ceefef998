#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "hs/domain.hpp"

namespace hs {

/// Length of the longest common subsequence of two code point strings.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

/// Insertions plus deletions needed to turn `a` into `b`.
inline std::size_t indel_distance(std::u32string_view a, std::u32string_view b) {
  return a.size() + b.size() - 2 * lcs_length(a, b);
}

/// 100 * (1 - distance / total_length), with two empty strings scoring 100.
double indel_score(std::size_t distance, std::size_t total_length);

/// Normalized indel similarity in [0, 100] of the NFC forms of `a` and `b`.
double similarity(std::string_view a, std::string_view b);

/// Inclusive window-length band searched for a query of `query_length` code
/// points: [ceil(0.8 q), floor(1.2 q)] intersected with [min_length, text_length].
struct WindowBand {
  std::size_t min = 0;
  std::size_t max = 0;
  bool empty() const { return min > max; }
};
WindowBand window_band(std::size_t query_length, std::size_t min_length, std::size_t text_length);

struct WindowMatch {
  std::size_t start = 0;
  std::size_t end = 0;
  double score = 0.0;
};

/// Best-scoring window of `text` for `query` inside the length band. Ties go
/// to the lower start, then the shorter window. Returns nullopt when the band
/// is empty or the best score falls below `limits.threshold`.
std::optional<WindowMatch> best_window(std::u32string_view text, std::u32string_view query,
                                       const HighlightLimits& limits);

struct ScoredSpan {
  Span span;
  double score = 0.0;
};

/// `best_window` over a document, returning a span that carries its text.
/// The query is NFC-normalized first. Throws InvalidArgument on an empty query.
std::optional<ScoredSpan> best_span(const Document& doc, std::string_view query, const HighlightLimits& limits);

}  // namespace hs
