#pragma once

#include <string>

#include "hs/gateway.hpp"

namespace hs {

struct HttpSettings {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_s = 60.0;
};

/// OpenAI-compatible `POST {base_url}/chat/completions` client. Structured
/// requests are sent with a `json_schema` response format.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(HttpSettings settings);

  Completion complete(const ChatRequest& req) const override;

  /// Request body for `req`; exposed for tests.
  nlohmann::json request_body(const ChatRequest& req) const;
  /// Extracts text and usage from a response body. Throws TransportError on a malformed body.
  static Completion parse_response(const std::string& body);

 private:
  HttpSettings settings_;
};

}  // namespace hs
