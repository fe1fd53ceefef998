#include "hs/http_backend.hpp"

#include <cstdlib>

#include "http_util.hpp"
#include "hs/errors.hpp"

namespace hs {

using nlohmann::json;

HttpBackend::HttpBackend(HttpSettings settings) : settings_(std::move(settings)) {
  if (settings_.base_url.empty()) throw ConfigError("http backend needs a base_url");
  if (settings_.model.empty()) throw ConfigError("http backend needs a model name");
}

json HttpBackend::request_body(const ChatRequest& req) const {
  json messages = json::array();
  for (const auto& m : req.messages)
    messages.push_back({{"role", m.role == MessageRole::system ? "system" : "user"}, {"content", m.content}});
  json body = {{"model", settings_.model},
               {"messages", messages},
               {"temperature", req.decoding.temperature},
               {"max_tokens", req.decoding.max_tokens}};
  if (req.output_schema) {
    body["response_format"] = {
        {"type", "json_schema"},
        {"json_schema",
         {{"name", req.output_schema->name().empty() ? "reply" : req.output_schema->name()},
          {"strict", true},
          {"schema", req.output_schema->to_json_schema()}}}};
  }
  return body;
}

Completion HttpBackend::parse_response(const std::string& body) {
  const auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw TransportError("chat completion response is not JSON");
  try {
    Completion c;
    const auto& content = j.at("choices").at(0).at("message").at("content");
    c.text = content.is_null() ? std::string() : content.get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      c.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0LL);
      c.usage.completion_tokens = j["usage"].value("completion_tokens", 0LL);
    } else {
      c.usage.completion_tokens = estimate_tokens(c.text);
    }
    return c;
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected chat completion response: ") + e.what());
  }
}

Completion HttpBackend::complete(const ChatRequest& req) const {
  const auto url = detail::split_url(settings_.base_url);
  auto client = detail::make_client(url.origin, settings_.timeout_s);
  httplib::Headers headers;
  if (const char* key = std::getenv(settings_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);
  const auto res = client->Post(url.path + "/chat/completions", headers, request_body(req).dump(), "application/json");
  if (!res) throw TransportError("chat completion transport failure: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw TransportError("chat completion returned HTTP " + std::to_string(res->status));
  return parse_response(res->body);
}

}  // namespace hs
