#include "hs/gateway.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "hs/errors.hpp"
#include "hs/unicode.hpp"

namespace hs {

using nlohmann::json;

std::string_view to_string(RoleTag tag) {
  switch (tag) {
    case RoleTag::highlighter: return "highlighter";
    case RoleTag::summarizer: return "summarizer";
    case RoleTag::judge: return "judge";
    case RoleTag::vanilla: return "vanilla";
  }
  return "unknown";
}

std::optional<RoleTag> parse_role_tag(std::string_view s) {
  for (auto t : {RoleTag::highlighter, RoleTag::summarizer, RoleTag::judge, RoleTag::vanilla}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

const std::string& FieldMap::string(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end() || !std::holds_alternative<std::string>(it->second))
    throw InvalidArgument("field '" + name + "' is not a string");
  return std::get<std::string>(it->second);
}

const std::vector<std::string>& FieldMap::list(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end() || !std::holds_alternative<std::vector<std::string>>(it->second))
    throw InvalidArgument("field '" + name + "' is not a string list");
  return std::get<std::vector<std::string>>(it->second);
}

bool FieldMap::boolean(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end() || !std::holds_alternative<bool>(it->second))
    throw InvalidArgument("field '" + name + "' is not a boolean");
  return std::get<bool>(it->second);
}

SchemaSpec::SchemaSpec(std::string name, std::vector<FieldSpec> fields)
    : name_(std::move(name)), fields_(std::move(fields)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : fields_) {
    if (f.name.empty()) throw InvalidArgument("schema field with empty name");
    if (!seen.insert(f.name).second) throw InvalidArgument("duplicate schema field: " + f.name);
  }
}

namespace {

std::optional<json> parse_object(std::string_view reply) {
  const std::string text = unicode::trim(reply);
  auto try_parse = [](std::string_view s) -> std::optional<json> {
    auto j = json::parse(s.begin(), s.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
  };
  if (auto j = try_parse(text)) return j;
  // ```json ... ``` fences
  if (auto open = text.find("```"); open != std::string::npos) {
    auto body_start = text.find('\n', open);
    auto close = text.find("```", open + 3);
    if (body_start != std::string::npos && close != std::string::npos && close > body_start) {
      if (auto j = try_parse(std::string_view(text).substr(body_start + 1, close - body_start - 1))) return j;
    }
  }
  const auto first = text.find('{');
  const auto last = text.rfind('}');
  if (first != std::string::npos && last != std::string::npos && last > first) {
    if (auto j = try_parse(std::string_view(text).substr(first, last - first + 1))) return j;
  }
  return std::nullopt;
}

std::string_view kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::string: return "string";
    case FieldKind::string_list: return "list of strings";
    case FieldKind::boolean: return "boolean";
  }
  return "?";
}

}  // namespace

std::optional<FieldMap> SchemaSpec::parse(std::string_view reply, std::string* why) const {
  auto reject = [why](std::string msg) -> std::optional<FieldMap> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  const auto obj = parse_object(reply);
  if (!obj) return reject("reply is not a JSON object");
  FieldMap out;
  for (const auto& f : fields_) {
    const auto it = obj->find(f.name);
    if (it == obj->end() || it->is_null()) {
      if (f.required) return reject("missing field '" + f.name + "'");
      continue;
    }
    switch (f.kind) {
      case FieldKind::string:
        if (!it->is_string()) return reject("field '" + f.name + "' must be a string");
        out.set(f.name, it->get<std::string>());
        break;
      case FieldKind::string_list: {
        if (!it->is_array()) return reject("field '" + f.name + "' must be a list of strings");
        std::vector<std::string> items;
        for (const auto& e : *it) {
          if (!e.is_string()) return reject("field '" + f.name + "' must be a list of strings");
          items.push_back(e.get<std::string>());
        }
        out.set(f.name, std::move(items));
        break;
      }
      case FieldKind::boolean:
        if (!it->is_boolean()) return reject("field '" + f.name + "' must be a boolean");
        out.set(f.name, it->get<bool>());
        break;
    }
  }
  return out;
}

json SchemaSpec::to_json_schema() const {
  json props = json::object();
  json required = json::array();
  for (const auto& f : fields_) {
    switch (f.kind) {
      case FieldKind::string: props[f.name] = {{"type", "string"}}; break;
      case FieldKind::string_list: props[f.name] = {{"type", "array"}, {"items", {{"type", "string"}}}}; break;
      case FieldKind::boolean: props[f.name] = {{"type", "boolean"}}; break;
    }
    if (f.required) required.push_back(f.name);
  }
  return {{"type", "object"}, {"properties", props}, {"required", required}, {"additionalProperties", false}};
}

std::string SchemaSpec::describe() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) os << ", ";
    os << '"' << fields_[i].name << "\": " << kind_name(fields_[i].kind);
    if (!fields_[i].required) os << " (optional)";
  }
  os << "}";
  return os.str();
}

std::string ChatRequest::joined_content() const {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i) out.push_back('\n');
    out += messages[i].content;
  }
  return out;
}

std::size_t transcript_query(const Transcript& t, RoleTag role, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (const auto& e : t.entries) {
    if (e.request.role != role) continue;
    for (const auto& m : e.request.messages) {
      for (auto pos = m.content.find(needle); pos != std::string::npos; pos = m.content.find(needle, pos + 1)) ++count;
    }
  }
  return count;
}

long long estimate_tokens(std::string_view text) {
  long long n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

Gateway::Gateway(std::shared_ptr<const ChatBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)), options_(options) {
  if (!backend_) throw InvalidArgument("gateway needs a backend");
}

std::string Gateway::complete(const ChatRequest& request) {
  if (request.messages.empty()) throw InvalidArgument("chat request has no messages");
  ChatRequest req = request;
  if (options_.decoding) req.decoding = *options_.decoding;
  const int attempts = 1 + std::max(0, options_.transport_retries);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    try {
      Completion c = backend_->complete(req);
      std::lock_guard lock(mu_);
      transcript_.entries.push_back({req, c.text, std::chrono::system_clock::now()});
      usage_ += c.usage;
      return std::move(c.text);
    } catch (const TransportError& e) {
      last_error = e.what();
      if (attempt < attempts && options_.backoff.count() > 0) std::this_thread::sleep_for(options_.backoff * attempt);
    }
  }
  throw GatewayError("model call failed after " + std::to_string(attempts) + " attempts: " + last_error);
}

StructuredResult Gateway::complete_structured(ChatRequest req, const SchemaSpec& schema,
                                              std::optional<int> max_retries) {
  if (schema.empty()) throw InvalidArgument("structured request with an empty schema");
  req.output_schema = schema;
  const int attempts = 1 + std::max(0, max_retries.value_or(options_.structured_retries));
  std::string why;
  std::string reply;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    reply = complete(req);
    if (auto fields = schema.parse(reply, &why)) return {std::move(*fields), attempt, std::move(reply)};
    req.messages.push_back({MessageRole::user,
                            "Your previous reply could not be used (" + why +
                                "). Reply again with only a JSON object of the form " + schema.describe() + "."});
  }
  throw StructuredOutputFailure("no valid structured reply after " + std::to_string(attempts) + " attempts: " + why,
                                attempts, std::move(reply));
}

Transcript Gateway::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

TokenUsage Gateway::usage() const {
  std::lock_guard lock(mu_);
  return usage_;
}

}  // namespace hs
