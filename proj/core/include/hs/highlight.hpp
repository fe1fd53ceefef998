#pragma once

#include <span>
#include <string>
#include <vector>

#include "hs/domain.hpp"
#include "hs/gateway.hpp"

namespace hs {

/// Span-prediction service: `POST {base_url}/extract`.
struct ExtractiveEndpoint {
  std::string base_url;
  double timeout_s = 30.0;
  double confidence_floor = 0.3;
};

enum class HighlighterKind { baseline, structured, extractive };

std::string_view to_string(HighlighterKind kind);
std::optional<HighlighterKind> parse_highlighter_kind(std::string_view s);

/// A highlighter's grounded output plus the unsnapped text it produced. For
/// the structured highlighter that text is the decoded answer and extracts,
/// or the last raw reply when no reply parsed.
struct HighlightOutcome {
  HighlightSet highlights;
  std::string raw_output;
};

/// Grounds free-text extracts in `docs`: each extract snaps to its best
/// window (first document wins ties), ungrounded extracts are dropped,
/// overlapping spans of one document are merged, and only the `max_spans`
/// highest-scoring spans survive. Output is ordered by (document, start).
HighlightSet snap_extracts(std::span<const Document> docs, std::span<const std::string> extracts,
                           const HighlightLimits& limits);

/// Blank-line separated extracts from a plain-text highlighter reply.
std::vector<std::string> split_extracts(std::string_view reply);

HighlightOutcome highlight_baseline(const Question& q, std::span<const Document> docs, const HighlightLimits& limits,
                                    Gateway& gateway);

/// Asks for `{"answer", "text_extracts"}` and keeps only the extracts. A
/// structured-output failure yields an empty set.
HighlightOutcome highlight_structured(const Question& q, std::span<const Document> docs,
                                      const HighlightLimits& limits, Gateway& gateway);

/// Throws HighlighterUnavailable when the service cannot be reached or
/// replies with something other than the span contract.
HighlightOutcome highlight_extractive(const Question& q, std::span<const Document> docs,
                                      const HighlightLimits& limits, const ExtractiveEndpoint& endpoint);

const SchemaSpec& structured_highlighter_schema();

}  // namespace hs
