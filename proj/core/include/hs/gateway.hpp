#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hs/domain.hpp"

namespace hs {

/// Which pipeline stage issued a request. Transcript audits key on this.
enum class RoleTag { highlighter, summarizer, judge, vanilla };

std::string_view to_string(RoleTag tag);
std::optional<RoleTag> parse_role_tag(std::string_view s);

enum class MessageRole { system, user };

struct Message {
  MessageRole role = MessageRole::user;
  std::string content;
  friend bool operator==(const Message&, const Message&) = default;
};

struct Decoding {
  double temperature = 0.0;
  int max_tokens = 1024;
  friend bool operator==(const Decoding&, const Decoding&) = default;
};

enum class FieldKind { string, string_list, boolean };

struct FieldSpec {
  std::string name;
  FieldKind kind = FieldKind::string;
  bool required = true;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

using FieldValue = std::variant<std::string, std::vector<std::string>, bool>;

class FieldMap {
 public:
  void set(std::string name, FieldValue value) { values_[std::move(name)] = std::move(value); }
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  const std::string& string(const std::string& name) const;
  const std::vector<std::string>& list(const std::string& name) const;
  bool boolean(const std::string& name) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::string, FieldValue> values_;
};

/// Declared shape of a structured model reply.
class SchemaSpec {
 public:
  SchemaSpec() = default;
  /// Throws InvalidArgument on duplicate or empty field names.
  SchemaSpec(std::string name, std::vector<FieldSpec> fields);

  const std::string& name() const { return name_; }
  const std::vector<FieldSpec>& fields() const { return fields_; }
  bool empty() const { return fields_.empty(); }

  /// Parses a model reply. Accepts a bare JSON object, a fenced block, or an
  /// object embedded in surrounding prose. Returns nullopt and fills `why` on failure.
  std::optional<FieldMap> parse(std::string_view reply, std::string* why = nullptr) const;

  /// JSON-schema object for an OpenAI-style `response_format`.
  nlohmann::json to_json_schema() const;
  /// Human-readable field list used in prompts and corrective retries.
  std::string describe() const;

  friend bool operator==(const SchemaSpec&, const SchemaSpec&) = default;

 private:
  std::string name_;
  std::vector<FieldSpec> fields_;
};

struct ChatRequest {
  RoleTag role = RoleTag::vanilla;
  std::vector<Message> messages;
  Decoding decoding;
  std::optional<SchemaSpec> output_schema;

  /// All message contents joined with newlines; what mock rules match against.
  std::string joined_content() const;
  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

struct Completion {
  std::string text;
  TokenUsage usage;
};

/// A chat-completion provider. Implementations must be safe to call from
/// several threads at once and throw TransportError for retryable failures.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual Completion complete(const ChatRequest& req) const = 0;
};

struct TranscriptEntry {
  ChatRequest request;
  std::string response;
  std::chrono::system_clock::time_point at;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// Occurrences of `needle` across the message contents of every request
/// tagged `role`. Overlapping occurrences count separately; an empty needle counts 0.
std::size_t transcript_query(const Transcript& t, RoleTag role, std::string_view needle);

struct GatewayOptions {
  int transport_retries = 2;
  std::chrono::milliseconds backoff{250};
  int structured_retries = 2;
  /// Replaces the decoding settings of every request when set.
  std::optional<Decoding> decoding;
};

struct StructuredResult {
  FieldMap fields;
  int attempts = 0;
  std::string raw;  // text of the accepted reply
};

/// One conversation session over a shared backend. Records every completed
/// call and accumulates token usage; safe for concurrent calls.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<const ChatBackend> backend, GatewayOptions options = {});

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Throws GatewayError once transport retries are exhausted.
  std::string complete(const ChatRequest& req);

  /// Issues `req` with `schema` attached and re-asks with a corrective
  /// instruction while the reply fails to parse. `max_retries` defaults to
  /// the session option. Throws StructuredOutputFailure after the last attempt.
  StructuredResult complete_structured(ChatRequest req, const SchemaSpec& schema,
                                       std::optional<int> max_retries = {});

  Transcript transcript() const;
  TokenUsage usage() const;
  const std::shared_ptr<const ChatBackend>& backend() const { return backend_; }
  const GatewayOptions& options() const { return options_; }

 private:
  std::shared_ptr<const ChatBackend> backend_;
  GatewayOptions options_;
  mutable std::mutex mu_;
  Transcript transcript_;
  TokenUsage usage_;
};

/// Rough whitespace token count, used when a backend reports no usage.
long long estimate_tokens(std::string_view text);

}  // namespace hs
