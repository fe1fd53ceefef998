#pragma once

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hs/gateway.hpp"

namespace hs {

/// A canned reply chosen when `pattern` occurs in the request content.
/// `role`, when set, restricts the rule to requests from one stage.
struct MockRule {
  std::string pattern;
  bool is_regex = false;
  int priority = 0;
  std::string response;
  std::optional<RoleTag> role;
};

/// Deterministic scripted backend: the reply is the response of the highest
/// priority matching rule (earliest declared on ties), else the default.
class MockBackend : public ChatBackend {
 public:
  /// Throws ConfigError on an invalid regular expression.
  explicit MockBackend(std::vector<MockRule> rules, std::string default_response = "");

  Completion complete(const ChatRequest& req) const override;

  /// Index of the rule that answers `req`, if any.
  std::optional<std::size_t> match(const ChatRequest& req) const;

  const std::vector<MockRule>& rules() const { return rules_; }
  const std::string& default_response() const { return default_response_; }

 private:
  std::vector<MockRule> rules_;
  std::vector<std::optional<std::regex>> compiled_;
  std::string default_response_;
};

/// `[{"pattern", "is_regex", "priority", "response", "role"?}]`
std::vector<MockRule> mock_rules_from_json(const nlohmann::json& j);
nlohmann::json mock_rules_to_json(const std::vector<MockRule>& rules);
std::vector<MockRule> load_mock_rules(const std::filesystem::path& path);

}  // namespace hs
