#include "hs/highlight.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <unordered_map>

#include "http_util.hpp"
#include "hs/errors.hpp"
#include "hs/similarity.hpp"
#include "hs/unicode.hpp"
#include "prompts.hpp"

namespace hs {

using nlohmann::json;

std::string_view to_string(HighlighterKind kind) {
  switch (kind) {
    case HighlighterKind::baseline: return "baseline";
    case HighlighterKind::structured: return "structured";
    case HighlighterKind::extractive: return "extractive";
  }
  return "unknown";
}

std::optional<HighlighterKind> parse_highlighter_kind(std::string_view s) {
  for (auto k : {HighlighterKind::baseline, HighlighterKind::structured, HighlighterKind::extractive}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

struct Candidate {
  std::size_t doc = 0;  // position in the document list
  std::size_t start = 0;
  std::size_t end = 0;
  double score = 0.0;
};

// Merges overlapping candidates per document, keeps the `max_spans` best and
// orders the survivors by (document, start).
HighlightSet finalize(std::vector<Candidate> cands, const std::vector<std::u32string>& texts,
                      std::span<const Document> docs, std::size_t max_spans) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.doc, a.start, a.end) < std::tie(b.doc, b.start, b.end);
  });
  std::vector<Candidate> merged;
  for (const auto& c : cands) {
    if (!merged.empty() && merged.back().doc == c.doc && c.start < merged.back().end) {
      auto& m = merged.back();
      m.end = std::max(m.end, c.end);
      m.score = std::max(m.score, c.score);
    } else {
      merged.push_back(c);
    }
  }
  if (merged.size() > max_spans) {
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    merged.resize(max_spans);
    std::sort(merged.begin(), merged.end(),
              [](const Candidate& a, const Candidate& b) { return std::tie(a.doc, a.start) < std::tie(b.doc, b.start); });
  }
  HighlightSet out;
  for (const auto& c : merged) {
    const auto& t = texts[c.doc];
    out.spans.push_back(
        Span{docs[c.doc].id, c.start, c.end, unicode::encode(std::u32string_view(t).substr(c.start, c.end - c.start))});
    out.scores.push_back(c.score);
  }
  return out;
}

std::vector<std::u32string> decode_all(std::span<const Document> docs) {
  std::vector<std::u32string> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(unicode::decode(d.text));
  return texts;
}

std::string documents_block(std::span<const Document> docs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i) os << "\n\n";
    os << "[Document " << (i + 1) << "]\n" << docs[i].text;
  }
  return os.str();
}

ChatRequest highlighter_request(std::string_view system, const Question& q, std::span<const Document> docs) {
  ChatRequest req;
  req.role = RoleTag::highlighter;
  req.messages.push_back({MessageRole::system, std::string(system)});
  req.messages.push_back({MessageRole::user, "Question: " + q.text + "\n\nDocuments:\n" + documents_block(docs)});
  return req;
}

}  // namespace

HighlightSet snap_extracts(std::span<const Document> docs, std::span<const std::string> extracts,
                           const HighlightLimits& limits) {
  limits.check();
  const auto texts = decode_all(docs);
  std::vector<Candidate> cands;
  for (const auto& extract : extracts) {
    const auto query = unicode::decode(unicode::nfc(unicode::trim(extract)));
    if (query.empty()) continue;
    std::optional<Candidate> best;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto m = best_window(texts[d], query, limits);
      if (m && (!best || m->score > best->score)) best = Candidate{d, m->start, m->end, m->score};
    }
    if (!best) continue;
    // Edge whitespace carries no evidence and does not count towards the minimum length.
    const auto& t = texts[best->doc];
    while (best->start < best->end && unicode::is_space(t[best->start])) ++best->start;
    while (best->end > best->start && unicode::is_space(t[best->end - 1])) --best->end;
    if (best->end - best->start < limits.min_length) continue;
    cands.push_back(*best);
  }
  return finalize(std::move(cands), texts, docs, limits.max_spans);
}

std::vector<std::string> split_extracts(std::string_view reply) {
  static const std::regex blank_line(R"(\r?\n[ \t]*\r?\n)");
  const std::string text(reply);
  std::vector<std::string> out;
  for (std::sregex_token_iterator it(text.begin(), text.end(), blank_line, -1), end; it != end; ++it) {
    auto piece = unicode::trim(it->str());
    if (!piece.empty()) out.push_back(std::move(piece));
  }
  return out;
}

const SchemaSpec& structured_highlighter_schema() {
  static const SchemaSpec schema("highlights",
                                 {{"answer", FieldKind::string, true}, {"text_extracts", FieldKind::string_list, true}});
  return schema;
}

HighlightOutcome highlight_baseline(const Question& q, std::span<const Document> docs, const HighlightLimits& limits,
                                    Gateway& gateway) {
  HighlightOutcome out;
  out.raw_output = gateway.complete(highlighter_request(prompts::kHighlighterBaseline, q, docs));
  const auto extracts = split_extracts(out.raw_output);
  out.highlights = snap_extracts(docs, extracts, limits);
  return out;
}

HighlightOutcome highlight_structured(const Question& q, std::span<const Document> docs,
                                      const HighlightLimits& limits, Gateway& gateway) {
  HighlightOutcome out;
  try {
    auto result = gateway.complete_structured(highlighter_request(prompts::kHighlighterStructured, q, docs),
                                              structured_highlighter_schema());
    // Decoded field text, so that escaped quoting inside the JSON does not
    // hide what the model wrote. The answer field goes no further than this.
    out.raw_output = result.fields.string("answer");
    for (const auto& e : result.fields.list("text_extracts")) out.raw_output += "\n\n" + e;
    out.highlights = snap_extracts(docs, result.fields.list("text_extracts"), limits);
  } catch (const StructuredOutputFailure& e) {
    out.raw_output = e.last_reply();
  }
  return out;
}

HighlightOutcome highlight_extractive(const Question& q, std::span<const Document> docs,
                                      const HighlightLimits& limits, const ExtractiveEndpoint& endpoint) {
  limits.check();
  if (endpoint.base_url.empty()) throw HighlighterUnavailable("extractive endpoint has no base_url");
  const auto url = detail::split_url(endpoint.base_url);
  auto client = detail::make_client(url.origin, endpoint.timeout_s);
  const auto texts = decode_all(docs);

  HighlightOutcome out;
  std::vector<Candidate> cands;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const json body = {{"question", q.text}, {"document", docs[d].text}, {"max_spans", limits.max_spans}};
    const auto res = client->Post(url.path + "/extract", body.dump(), "application/json");
    if (!res) throw HighlighterUnavailable("extractive service unreachable: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
      throw HighlighterUnavailable("extractive service returned HTTP " + std::to_string(res->status));
    const auto reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || !reply.contains("spans") || !reply["spans"].is_array())
      throw HighlighterUnavailable("extractive service reply lacks a 'spans' array");
    if (!out.raw_output.empty()) out.raw_output += '\n';
    out.raw_output += res->body;

    const auto n = texts[d].size();
    for (const auto& s : reply["spans"]) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end") || !s["start"].is_number_integer() ||
          !s["end"].is_number_integer())
        continue;
      const auto start = s["start"].get<long long>();
      const auto end = s["end"].get<long long>();
      const double confidence = s.value("confidence", 0.0);
      if (start < 0 || end <= start || static_cast<std::size_t>(end) > n) continue;
      if (confidence < endpoint.confidence_floor) continue;
      if (static_cast<std::size_t>(end - start) < limits.min_length) continue;
      cands.push_back({d, static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                       std::clamp(confidence * 100.0, 0.0, 100.0)});
    }
  }
  out.highlights = finalize(std::move(cands), texts, docs, limits.max_spans);
  return out;
}

}  // namespace hs
