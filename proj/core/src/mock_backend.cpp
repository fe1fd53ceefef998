#include "hs/mock_backend.hpp"

#include <fstream>

#include "hs/errors.hpp"

namespace hs {

using nlohmann::json;

MockBackend::MockBackend(std::vector<MockRule> rules, std::string default_response)
    : rules_(std::move(rules)), default_response_(std::move(default_response)) {
  compiled_.reserve(rules_.size());
  for (const auto& r : rules_) {
    if (!r.is_regex) {
      compiled_.emplace_back();
      continue;
    }
    try {
      compiled_.emplace_back(std::regex(r.pattern, std::regex::ECMAScript));
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid mock rule regex '" + r.pattern + "': " + e.what());
    }
  }
}

std::optional<std::size_t> MockBackend::match(const ChatRequest& req) const {
  const std::string content = req.joined_content();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.role && *r.role != req.role) continue;
    const bool hit = r.is_regex ? std::regex_search(content, *compiled_[i]) : content.find(r.pattern) != std::string::npos;
    if (hit && (!best || r.priority > rules_[*best].priority)) best = i;
  }
  return best;
}

Completion MockBackend::complete(const ChatRequest& req) const {
  const auto i = match(req);
  Completion c;
  c.text = i ? rules_[*i].response : default_response_;
  c.usage.prompt_tokens = estimate_tokens(req.joined_content());
  c.usage.completion_tokens = estimate_tokens(c.text);
  return c;
}

std::vector<MockRule> mock_rules_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("mock rules must be a JSON array");
  std::vector<MockRule> rules;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("pattern") || !e.contains("response"))
      throw ConfigError("mock rule needs 'pattern' and 'response'");
    MockRule r;
    r.pattern = e.at("pattern").get<std::string>();
    r.response = e.at("response").get<std::string>();
    r.is_regex = e.value("is_regex", false);
    r.priority = e.value("priority", 0);
    if (e.contains("role") && !e.at("role").is_null()) {
      r.role = parse_role_tag(e.at("role").get<std::string>());
      if (!r.role) throw ConfigError("unknown role in mock rule: " + e.at("role").dump());
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

json mock_rules_to_json(const std::vector<MockRule>& rules) {
  json out = json::array();
  for (const auto& r : rules) {
    json e = {{"pattern", r.pattern}, {"is_regex", r.is_regex}, {"priority", r.priority}, {"response", r.response}};
    if (r.role) e["role"] = std::string(to_string(*r.role));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<MockRule> load_mock_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mock rules file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("mock rules file " + path.string() + " is not valid JSON: " + e.what());
  }
  return mock_rules_from_json(j);
}

}  // namespace hs
