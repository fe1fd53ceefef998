#pragma once

#include <optional>

#include "hs/domain.hpp"
#include "hs/gateway.hpp"

namespace hs {

struct SummarizerConfig {
  /// Also hand the summarizer the full text of every highlighted document.
  bool include_document_context = false;
  bool decline_on_empty = true;
};

const SchemaSpec& summarizer_schema();

/// Builds the summarizer request. Only highlight texts (and optionally whole
/// documents) go in; there is deliberately no way to pass the question.
ChatRequest summarizer_request(const HighlightSet& hs, const DocumentStore& store, const SummarizerConfig& cfg);

/// Returns nullopt for a decline: no evidence, or no parseable reply.
/// Throws UnknownDocument when a span names a document missing from `store`.
std::optional<SummarizerOutput> summarize(const HighlightSet& hs, const DocumentStore& store,
                                          const SummarizerConfig& cfg, Gateway& gateway);

}  // namespace hs
