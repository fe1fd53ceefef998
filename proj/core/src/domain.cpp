#include "hs/domain.hpp"

#include <algorithm>

#include "hs/errors.hpp"
#include "hs/unicode.hpp"

namespace hs {

Question Question::make(std::string id, std::string text) {
  if (unicode::trim(text).empty()) throw InvalidArgument("question text is empty");
  return Question{std::move(id), std::move(text)};
}

Document Document::make(std::string id, std::string text, std::optional<std::string> source_uri) {
  if (id.empty()) throw InvalidArgument("document id is empty");
  if (text.empty()) throw InvalidArgument("document '" + id + "' has empty text");
  return Document{std::move(id), unicode::nfc(text), std::move(source_uri)};
}

std::size_t Document::length() const { return unicode::length(text); }

std::string Document::slice(std::size_t start, std::size_t end) const {
  return unicode::slice(text, start, end);
}

void HighlightLimits::check() const {
  if (!(threshold >= 0.0 && threshold <= 100.0))
    throw InvalidArgument("highlight threshold must lie in [0, 100]");
  if (min_length < 1) throw InvalidArgument("minimum span length must be >= 1");
  if (max_spans < 1) throw InvalidArgument("maximum span count must be >= 1");
}

PipelineAnswer PipelineAnswer::decline(std::string question_id, std::string pipeline_name) {
  PipelineAnswer a;
  a.question_id = std::move(question_id);
  a.pipeline_name = std::move(pipeline_name);
  a.answer = std::string(kDeclineMessage);
  a.declined = true;
  return a;
}

DocumentStore::DocumentStore(std::vector<Document> docs) {
  for (auto& d : docs) add(std::move(d));
}

DocumentStore DocumentStore::from_records(const std::vector<DatasetRecord>& records) {
  DocumentStore store;
  for (const auto& r : records) {
    // Several questions commonly share one document.
    if (const auto* existing = store.find(r.document.id)) {
      if (existing->text != r.document.text)
        throw InvalidArgument("document '" + r.document.id + "' appears with differing text");
    } else {
      store.add(r.document);
    }
    store.associate(r.id, r.document.id);
  }
  return store;
}

void DocumentStore::add(Document doc) {
  if (index_.count(doc.id)) throw InvalidArgument("duplicate document id: " + doc.id);
  index_.emplace(doc.id, docs_.size());
  docs_.push_back(std::move(doc));
}

void DocumentStore::associate(const std::string& question_id, const std::string& document_id) {
  if (!contains(document_id)) throw UnknownDocument(document_id);
  associations_[question_id].push_back(document_id);
}

const Document& DocumentStore::lookup(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw UnknownDocument(id);
  return docs_[it->second];
}

const Document* DocumentStore::find(const std::string& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &docs_[it->second];
}

const std::vector<std::string>* DocumentStore::associated(const std::string& question_id) const {
  const auto it = associations_.find(question_id);
  return it == associations_.end() ? nullptr : &it->second;
}

std::size_t DocumentStore::position(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw UnknownDocument(id);
  return it->second;
}

std::string_view to_string(HighlightRule rule) {
  switch (rule) {
    case HighlightRule::out_of_bounds: return "out-of-bounds";
    case HighlightRule::below_min_length: return "below-minimum-length";
    case HighlightRule::overlap: return "overlap";
    case HighlightRule::unsorted: return "unsorted";
    case HighlightRule::over_count: return "over-count";
    case HighlightRule::text_mismatch: return "text-mismatch";
    case HighlightRule::bad_score: return "bad-score";
  }
  return "unknown";
}

HighlightValidation validate_highlight_set(const HighlightSet& hs, const DocumentStore& store,
                                           const HighlightLimits& limits) {
  std::unordered_map<std::string, std::u32string> texts;
  for (const auto& s : hs.spans) {
    if (!texts.count(s.document_id)) texts.emplace(s.document_id, unicode::decode(store.lookup(s.document_id).text));
  }
  auto fail = [](HighlightRule r, std::size_t i) { return HighlightValidation{r, i}; };

  for (std::size_t i = 0; i < hs.spans.size(); ++i) {
    const auto& s = hs.spans[i];
    if (s.start >= s.end || s.end > texts.at(s.document_id).size()) return fail(HighlightRule::out_of_bounds, i);
  }
  for (std::size_t i = 0; i < hs.spans.size(); ++i) {
    if (hs.spans[i].length() < limits.min_length) return fail(HighlightRule::below_min_length, i);
  }
  // Any intersecting pair within a document shows up between neighbours once
  // that document's spans are ordered by start.
  std::unordered_map<std::string, std::vector<std::size_t>> by_doc;
  for (std::size_t i = 0; i < hs.spans.size(); ++i) by_doc[hs.spans[i].document_id].push_back(i);
  std::optional<std::size_t> first_overlap;
  for (auto& [id, idx] : by_doc) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return hs.spans[a].start < hs.spans[b].start; });
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (hs.spans[idx[k]].start < hs.spans[idx[k - 1]].end) {
        const auto at = std::max(idx[k], idx[k - 1]);
        if (!first_overlap || at < *first_overlap) first_overlap = at;
      }
    }
  }
  if (first_overlap) return fail(HighlightRule::overlap, *first_overlap);
  std::unordered_map<std::string, std::size_t> last;
  for (std::size_t i = 0; i < hs.spans.size(); ++i) {
    const auto& s = hs.spans[i];
    if (auto it = last.find(s.document_id); it != last.end() && hs.spans[it->second].start > s.start)
      return fail(HighlightRule::unsorted, i);
    last[s.document_id] = i;
  }
  if (hs.spans.size() > limits.max_spans) return fail(HighlightRule::over_count, 0);
  for (std::size_t i = 0; i < hs.spans.size(); ++i) {
    const auto& s = hs.spans[i];
    const auto& t = texts.at(s.document_id);
    if (unicode::encode(std::u32string_view(t).substr(s.start, s.end - s.start)) != s.text)
      return fail(HighlightRule::text_mismatch, i);
  }
  if (hs.scores.size() != hs.spans.size()) return fail(HighlightRule::bad_score, 0);
  for (std::size_t i = 0; i < hs.scores.size(); ++i) {
    if (!(hs.scores[i] >= 0.0 && hs.scores[i] <= 100.0)) return fail(HighlightRule::bad_score, i);
  }
  return {};
}

}  // namespace hs
