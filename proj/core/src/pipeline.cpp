#include "hs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "hs/errors.hpp"
#include "hs/text.hpp"
#include "hs/unicode.hpp"
#include "prompts.hpp"

namespace hs {

std::string_view to_string(PipelineKind kind) { return kind == PipelineKind::vanilla ? "vanilla" : "hs"; }

std::string_view to_string(RetrieverKind kind) {
  return kind == RetrieverKind::passthrough ? "passthrough" : "lexical";
}

void PipelineSpec::check() const {
  if (name.empty()) throw InvalidArgument("pipeline needs a name");
  if (k < 1) throw InvalidArgument("pipeline '" + name + "': retrieval depth k must be >= 1");
  limits.check();
  if (kind == PipelineKind::hs) {
    if (!highlighter) throw InvalidArgument("pipeline '" + name + "': hs pipelines need a highlighter");
    if (*highlighter == HighlighterKind::extractive && !extractive)
      throw InvalidArgument("pipeline '" + name + "': extractive highlighter needs an endpoint");
  }
}

std::vector<Document> retrieve(const DocumentStore& store, const Question& q, const PipelineSpec& spec) {
  if (store.empty()) throw InvalidArgument("retrieval over an empty document store");
  if (spec.retriever == RetrieverKind::passthrough) {
    const auto* ids = store.associated(q.id);
    if (!ids || ids->empty()) throw InvalidArgument("no document is associated with question '" + q.id + "'");
    std::vector<Document> out;
    for (const auto& id : *ids) {
      if (out.size() >= spec.k) break;
      out.push_back(store.lookup(id));
    }
    return out;
  }

  const auto qtokens = normalize_tokens(q.text);
  const std::set<std::string> wanted(qtokens.begin(), qtokens.end());
  struct Ranked {
    std::size_t overlap;
    const Document* doc;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(store.size());
  for (const auto& d : store.documents()) {
    const auto dtokens = normalize_tokens(d.text);
    const std::set<std::string> have(dtokens.begin(), dtokens.end());
    std::size_t overlap = 0;
    for (const auto& t : wanted) overlap += have.count(t);
    ranked.push_back({overlap, &d});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return a.doc->id < b.doc->id;
  });
  std::vector<Document> out;
  for (std::size_t i = 0; i < ranked.size() && i < spec.k; ++i) out.push_back(*ranked[i].doc);
  return out;
}

HighlightOutcome run_highlighter(const Question& q, const std::vector<Document>& docs, const PipelineSpec& spec,
                                 Gateway& gateway) {
  if (!spec.highlighter) throw InvalidArgument("pipeline '" + spec.name + "' has no highlighter");
  switch (*spec.highlighter) {
    case HighlighterKind::baseline: return highlight_baseline(q, docs, spec.limits, gateway);
    case HighlighterKind::structured: return highlight_structured(q, docs, spec.limits, gateway);
    case HighlighterKind::extractive:
      if (!spec.extractive) throw InvalidArgument("pipeline '" + spec.name + "' has no extractive endpoint");
      return highlight_extractive(q, docs, spec.limits, *spec.extractive);
  }
  throw InvalidArgument("unknown highlighter");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

PipelineAnswer run_hs(const Question& q, const PipelineSpec& spec, const DocumentStore& store, Gateway& gateway) {
  if (spec.kind != PipelineKind::hs) throw InvalidArgument("run_hs needs an hs pipeline spec");
  spec.check();
  const auto t0 = Clock::now();
  const auto usage0 = gateway.usage();

  const auto docs = retrieve(store, q, spec);
  auto highlighted = run_highlighter(q, docs, spec, gateway);
  const auto verdict = validate_highlight_set(highlighted.highlights, store, spec.limits);
  if (!verdict.ok())
    throw Error("highlighter produced an invalid highlight set (" + std::string(to_string(*verdict.violation)) + ")");

  const auto summary = summarize(highlighted.highlights, store, spec.summarizer, gateway);

  PipelineAnswer out = summary ? PipelineAnswer{} : PipelineAnswer::decline(q.id, spec.name);
  out.question_id = q.id;
  out.pipeline_name = spec.name;
  if (summary) {
    out.answer = summary->answer;
    out.guessed_question = summary->guessed_question;
  }
  out.highlights = std::move(highlighted.highlights);
  out.usage = gateway.usage() - usage0;
  out.elapsed_s = seconds_since(t0);
  return out;
}

ChatRequest vanilla_request(const Question& q, const std::vector<Document>& docs) {
  std::ostringstream os;
  os << "Documents:";
  for (std::size_t i = 0; i < docs.size(); ++i) os << "\n\n[Document " << (i + 1) << "]\n" << docs[i].text;
  os << "\n\nQuestion: " << q.text;
  ChatRequest req;
  req.role = RoleTag::vanilla;
  req.messages.push_back({MessageRole::system, std::string(prompts::kVanilla) + std::string(kDeclineMessage)});
  req.messages.push_back({MessageRole::user, os.str()});
  return req;
}

PipelineAnswer run_vanilla(const Question& q, const PipelineSpec& spec, const DocumentStore& store,
                           Gateway& gateway) {
  if (spec.kind != PipelineKind::vanilla) throw InvalidArgument("run_vanilla needs a vanilla pipeline spec");
  spec.check();
  const auto t0 = Clock::now();
  const auto usage0 = gateway.usage();

  const auto docs = retrieve(store, q, spec);
  const auto reply = gateway.complete(vanilla_request(q, docs));
  const auto trimmed = unicode::trim(reply);

  // An empty reply is treated like the instructed refusal.
  const bool declined = trimmed.empty() || trimmed == kDeclineMessage;
  PipelineAnswer out = declined ? PipelineAnswer::decline(q.id, spec.name) : PipelineAnswer{};
  out.question_id = q.id;
  out.pipeline_name = spec.name;
  if (!declined) out.answer = reply;
  out.usage = gateway.usage() - usage0;
  out.elapsed_s = seconds_since(t0);
  return out;
}

PipelineAnswer run_pipeline(const Question& q, const PipelineSpec& spec, const DocumentStore& store,
                            Gateway& gateway) {
  return spec.kind == PipelineKind::hs ? run_hs(q, spec, store, gateway) : run_vanilla(q, spec, store, gateway);
}

}  // namespace hs
