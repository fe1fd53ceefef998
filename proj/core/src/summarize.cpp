#include "hs/summarize.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hs/errors.hpp"
#include "hs/unicode.hpp"
#include "prompts.hpp"

namespace hs {

const SchemaSpec& summarizer_schema() {
  static const SchemaSpec schema("summary",
                                 {{"guessed_question", FieldKind::string, true}, {"answer", FieldKind::string, true}});
  return schema;
}

ChatRequest summarizer_request(const HighlightSet& hs, const DocumentStore& store, const SummarizerConfig& cfg) {
  // Document order first, then offset.
  std::vector<std::size_t> order(hs.spans.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> doc_pos;
  doc_pos.reserve(hs.spans.size());
  for (const auto& s : hs.spans) doc_pos.push_back(store.position(s.document_id));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(doc_pos[a], hs.spans[a].start) < std::tie(doc_pos[b], hs.spans[b].start);
  });

  std::ostringstream os;
  os << "Highlighted passages:";
  std::vector<std::string> context_ids;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& s = hs.spans[order[k]];
    const auto& doc = store.lookup(s.document_id);
    os << "\n\n[" << (k + 1) << "] " << doc.slice(s.start, s.end);
    if (std::find(context_ids.begin(), context_ids.end(), s.document_id) == context_ids.end())
      context_ids.push_back(s.document_id);
  }
  if (cfg.include_document_context) {
    os << "\n\n" << prompts::kSummarizerContext;
    for (std::size_t k = 0; k < context_ids.size(); ++k)
      os << "\n\n[Document " << (k + 1) << "]\n" << store.lookup(context_ids[k]).text;
  }

  ChatRequest req;
  req.role = RoleTag::summarizer;
  req.messages.push_back({MessageRole::system, std::string(prompts::kSummarizer)});
  req.messages.push_back({MessageRole::user, os.str()});
  return req;
}

std::optional<SummarizerOutput> summarize(const HighlightSet& hs, const DocumentStore& store,
                                          const SummarizerConfig& cfg, Gateway& gateway) {
  for (const auto& s : hs.spans) {
    if (!store.contains(s.document_id)) throw UnknownDocument(s.document_id);
  }
  if (hs.empty() && cfg.decline_on_empty) return std::nullopt;
  try {
    const auto result = gateway.complete_structured(summarizer_request(hs, store, cfg), summarizer_schema());
    SummarizerOutput out{result.fields.string("guessed_question"), result.fields.string("answer")};
    if (unicode::trim(out.answer).empty()) return std::nullopt;
    return out;
  } catch (const StructuredOutputFailure&) {
    return std::nullopt;
  }
}

}  // namespace hs
