#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hs {

/// Fixed refusal text. Every declined answer carries exactly this string.
inline constexpr std::string_view kDeclineMessage =
    "I cannot answer this question based on the available documents.";

struct Question {
  std::string id;
  std::string text;

  /// Throws InvalidArgument when the text is blank.
  static Question make(std::string id, std::string text);
};

struct Document {
  std::string id;
  std::string text;  // NFC, UTF-8
  std::optional<std::string> source_uri;

  /// NFC-normalizes `text`; throws InvalidArgument on empty id or text.
  static Document make(std::string id, std::string text, std::optional<std::string> source_uri = {});

  std::size_t length() const;  // code points
  std::string slice(std::size_t start, std::size_t end) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Code point range [start, end) of a document plus the text it matched.
struct Span {
  std::string document_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;

  std::size_t length() const { return end > start ? end - start : 0; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct HighlightLimits {
  double threshold = 95.0;
  std::size_t min_length = 20;
  std::size_t max_spans = 10;

  /// Throws InvalidArgument when a field is out of range.
  void check() const;
};

struct HighlightSet {
  std::vector<Span> spans;
  std::vector<double> scores;  // parallel to spans, each in [0, 100]

  bool empty() const { return spans.empty(); }
  std::size_t size() const { return spans.size(); }
  friend bool operator==(const HighlightSet&, const HighlightSet&) = default;
};

struct SummarizerOutput {
  std::string guessed_question;
  std::string answer;
  friend bool operator==(const SummarizerOutput&, const SummarizerOutput&) = default;
};

struct TokenUsage {
  long long prompt_tokens = 0;
  long long completion_tokens = 0;

  TokenUsage& operator+=(const TokenUsage& o) {
    prompt_tokens += o.prompt_tokens;
    completion_tokens += o.completion_tokens;
    return *this;
  }
  friend TokenUsage operator-(TokenUsage a, const TokenUsage& b) {
    a.prompt_tokens -= b.prompt_tokens;
    a.completion_tokens -= b.completion_tokens;
    return a;
  }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct PipelineAnswer {
  std::string question_id;
  std::string pipeline_name;
  std::string answer;
  bool declined = false;
  std::optional<std::string> guessed_question;
  std::optional<HighlightSet> highlights;
  double elapsed_s = 0.0;
  TokenUsage usage;

  static PipelineAnswer decline(std::string question_id, std::string pipeline_name);
  friend bool operator==(const PipelineAnswer&, const PipelineAnswer&) = default;
};

struct DatasetRecord {
  std::string id;
  std::string question;
  std::string reference_answer;
  std::optional<std::string> gold_passage;
  Document document;
  bool unanswerable = false;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

/// Id-keyed document collection that remembers insertion order and which
/// documents belong to which question.
class DocumentStore {
 public:
  DocumentStore() = default;
  explicit DocumentStore(std::vector<Document> docs);
  static DocumentStore from_records(const std::vector<DatasetRecord>& records);

  /// Throws InvalidArgument on duplicate id.
  void add(Document doc);
  void associate(const std::string& question_id, const std::string& document_id);

  /// Throws UnknownDocument.
  const Document& lookup(const std::string& id) const;
  const Document* find(const std::string& id) const;
  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  /// Document ids associated with a question, in association order.
  const std::vector<std::string>* associated(const std::string& question_id) const;
  /// Insertion position of a document, used to order spans across documents.
  std::size_t position(const std::string& id) const;

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<std::string>> associations_;
};

enum class HighlightRule {
  out_of_bounds,
  below_min_length,
  overlap,
  unsorted,
  over_count,
  text_mismatch,
  bad_score,
};

std::string_view to_string(HighlightRule rule);

struct HighlightValidation {
  std::optional<HighlightRule> violation;
  std::size_t span_index = 0;  // offending span; 0 for set-level rules

  bool ok() const { return !violation.has_value(); }
};

/// Checks every HighlightSet invariant against the stored texts. Rules are
/// tried in enum order over the whole set and the first one that fails is
/// reported. Throws UnknownDocument for a span naming a missing document.
HighlightValidation validate_highlight_set(const HighlightSet& hs, const DocumentStore& store,
                                           const HighlightLimits& limits);

}  // namespace hs
