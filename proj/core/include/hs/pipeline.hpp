#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hs/domain.hpp"
#include "hs/gateway.hpp"
#include "hs/highlight.hpp"
#include "hs/summarize.hpp"

namespace hs {

enum class PipelineKind { vanilla, hs };
enum class RetrieverKind { passthrough, lexical };

std::string_view to_string(PipelineKind kind);
std::string_view to_string(RetrieverKind kind);

struct PipelineSpec {
  std::string name;
  PipelineKind kind = PipelineKind::hs;
  std::optional<HighlighterKind> highlighter;  // required for hs
  HighlightLimits limits;
  SummarizerConfig summarizer;
  RetrieverKind retriever = RetrieverKind::passthrough;
  std::size_t k = 1;
  std::optional<ExtractiveEndpoint> extractive;

  /// Throws InvalidArgument on an inconsistent spec.
  void check() const;
};

/// Passthrough returns the documents associated with the question id;
/// lexical ranks every document by how many distinct normalized question
/// tokens it contains (ties by document id) and keeps the top k.
std::vector<Document> retrieve(const DocumentStore& store, const Question& q, const PipelineSpec& spec);

/// Runs `spec`'s highlighter over `docs`; the model-backed ones talk to `gateway`.
HighlightOutcome run_highlighter(const Question& q, const std::vector<Document>& docs, const PipelineSpec& spec,
                                 Gateway& gateway);

PipelineAnswer run_hs(const Question& q, const PipelineSpec& spec, const DocumentStore& store, Gateway& gateway);
PipelineAnswer run_vanilla(const Question& q, const PipelineSpec& spec, const DocumentStore& store, Gateway& gateway);
/// Dispatches on `spec.kind`.
PipelineAnswer run_pipeline(const Question& q, const PipelineSpec& spec, const DocumentStore& store,
                            Gateway& gateway);

/// The vanilla pipeline's request for `q` over `docs`.
ChatRequest vanilla_request(const Question& q, const std::vector<Document>& docs);

}  // namespace hs
