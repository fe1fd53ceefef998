#include "hs/config.hpp"

#include <fstream>
#include <set>

#include "hs/errors.hpp"
#include "hs/mock_backend.hpp"
#include "hs/persist.hpp"

namespace hs {

using nlohmann::json;

const PipelineSpec& RunConfig::pipeline(const std::string& name) const {
  for (const auto& p : pipelines) {
    if (p.name == name) return p;
  }
  throw ConfigError("no pipeline named '" + name + "' in config");
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::filesystem::path existing(const std::filesystem::path& base, const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_string()) throw ConfigError(std::string(what) + " needs '" + key + "'");
  auto path = resolve(base, j[key].get<std::string>());
  if (!std::filesystem::exists(path)) throw ConfigError(std::string(what) + " file not found: " + path.string());
  return path;
}

HighlightLimits limits_from_json(const json& j, HighlightLimits limits) {
  if (j.is_null()) return limits;
  limits.threshold = j.value("threshold", limits.threshold);
  limits.min_length = j.value("min_length", limits.min_length);
  limits.max_spans = j.value("max_spans", limits.max_spans);
  limits.check();
  return limits;
}

PipelineSpec pipeline_from_json(const json& j, const HighlightLimits& default_limits) {
  PipelineSpec p;
  p.name = j.at("name").get<std::string>();
  const auto kind = j.value("kind", std::string("hs"));
  if (kind == "vanilla") p.kind = PipelineKind::vanilla;
  else if (kind == "hs") p.kind = PipelineKind::hs;
  else throw ConfigError("pipeline '" + p.name + "': unknown kind '" + kind + "'");
  if (j.contains("highlighter")) {
    p.highlighter = parse_highlighter_kind(j["highlighter"].get<std::string>());
    if (!p.highlighter) throw ConfigError("pipeline '" + p.name + "': unknown highlighter " + j["highlighter"].dump());
  }
  p.limits = limits_from_json(j.value("limits", json()), default_limits);
  p.summarizer.include_document_context = j.value("include_document_context", false);
  p.summarizer.decline_on_empty = j.value("decline_on_empty", true);
  const auto retriever = j.value("retriever", std::string("passthrough"));
  if (retriever == "passthrough") p.retriever = RetrieverKind::passthrough;
  else if (retriever == "lexical") p.retriever = RetrieverKind::lexical;
  else throw ConfigError("pipeline '" + p.name + "': unknown retriever '" + retriever + "'");
  p.k = j.value("k", std::size_t{1});
  if (j.contains("extractive")) {
    const auto& e = j["extractive"];
    ExtractiveEndpoint ep;
    ep.base_url = e.at("base_url").get<std::string>();
    ep.timeout_s = e.value("timeout_s", ep.timeout_s);
    ep.confidence_floor = e.value("confidence_floor", ep.confidence_floor);
    p.extractive = ep;
  }
  try {
    p.check();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

}  // namespace

RunConfig run_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.jobs = std::max<std::size_t>(1, j.value("jobs", std::size_t{1}));
    cfg.output_dir = resolve(base_dir, j.value("output_dir", std::string("out")));

    const auto g = j.value("gateway", json::object());
    const auto backend = g.value("backend", std::string("mock"));
    if (backend == "mock") {
      cfg.gateway.backend = GatewayConfig::Backend::mock;
      if (g.contains("mock_rules")) cfg.gateway.mock_rules = existing(base_dir, g, "mock_rules", "gateway.mock_rules");
      cfg.gateway.mock_default_response = g.value("mock_default_response", std::string());
    } else if (backend == "http") {
      cfg.gateway.backend = GatewayConfig::Backend::http;
      cfg.gateway.http.base_url = g.value("base_url", std::string());
      cfg.gateway.http.model = g.value("model", std::string());
      cfg.gateway.http.api_key_env = g.value("api_key_env", cfg.gateway.http.api_key_env);
      cfg.gateway.http.timeout_s = g.value("timeout_s", cfg.gateway.http.timeout_s);
      if (cfg.gateway.http.base_url.empty() || cfg.gateway.http.model.empty())
        throw ConfigError("http gateway needs base_url and model");
    } else {
      throw ConfigError("unknown gateway backend '" + backend + "'");
    }
    cfg.gateway.options.transport_retries = g.value("transport_retries", cfg.gateway.options.transport_retries);
    cfg.gateway.options.structured_retries = g.value("structured_retries", cfg.gateway.options.structured_retries);
    cfg.gateway.options.backoff = std::chrono::milliseconds(g.value("backoff_ms", 250));
    if (g.contains("temperature") || g.contains("max_tokens")) {
      Decoding d;
      d.temperature = g.value("temperature", d.temperature);
      d.max_tokens = g.value("max_tokens", d.max_tokens);
      cfg.gateway.options.decoding = d;
    }

    const auto limits = limits_from_json(j.value("limits", json()), HighlightLimits{});
    std::set<std::string> names;
    for (const auto& p : j.value("pipelines", json::array())) {
      cfg.pipelines.push_back(pipeline_from_json(p, limits));
      if (!names.insert(cfg.pipelines.back().name).second)
        throw ConfigError("duplicate pipeline name '" + cfg.pipelines.back().name + "'");
    }

    if (j.contains("dataset") && !j["dataset"].is_null()) {
      const auto& d = j["dataset"];
      DatasetConfig ds;
      ds.path = existing(base_dir, d, "path", "dataset");
      const auto fmt = parse_source_format(d.value("format", std::string("normalized")));
      if (!fmt) throw ConfigError("unknown dataset format " + d.value("format", std::string()));
      ds.format = *fmt;
      ds.mapping = FieldMapping::from_json(ds.format, d.value("fields", json()));
      ds.max_quarantine_fraction = d.value("max_quarantine_fraction", ds.max_quarantine_fraction);
      cfg.dataset = ds;
    }

    if (j.contains("elo")) {
      const auto& e = j["elo"];
      cfg.elo.initial = e.value("initial", cfg.elo.initial);
      cfg.elo.k = e.value("k", cfg.elo.k);
      cfg.elo.permutations = e.value("permutations", cfg.elo.permutations);
    }
    cfg.elo.seed = cfg.seed;
    cfg.elo.check();

    if (j.contains("security") && !j["security"].is_null()) {
      const auto& s = j["security"];
      SecurityConfig sec;
      sec.corpus = existing(base_dir, s, "corpus", "security.corpus");
      sec.knowledge_base = existing(base_dir, s, "knowledge_base", "security.knowledge_base");
      if (s.contains("tool")) sec.tool = tool_spec_from_json(s["tool"]);
      sec.pipelines = s.value("pipelines", std::vector<std::string>{});
      sec.probes = s.value("probes", std::vector<std::string>{});
      for (const auto& n : sec.pipelines) (void)cfg.pipeline(n);
      for (const auto& n : sec.probes) {
        if (cfg.pipeline(n).kind != PipelineKind::hs) throw ConfigError("probe '" + n + "' is not an hs pipeline");
      }
      cfg.security = sec;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  const auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
  return run_config_from_json(j, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

std::shared_ptr<const ChatBackend> make_backend(const GatewayConfig& cfg) {
  if (cfg.backend == GatewayConfig::Backend::http) return std::make_shared<HttpBackend>(cfg.http);
  std::vector<MockRule> rules;
  if (!cfg.mock_rules.empty()) rules = load_mock_rules(cfg.mock_rules);
  return std::make_shared<MockBackend>(std::move(rules), cfg.mock_default_response);
}

std::vector<Document> load_documents(const std::filesystem::path& path) {
  std::vector<Document> docs;
  for (const auto& j : read_jsonl(path)) {
    if (!j.is_object() || !j.contains("id") || !j.contains("text"))
      throw DatasetError(path.string() + ": documents need 'id' and 'text'");
    docs.push_back(Document::make(j["id"].get<std::string>(), j["text"].get<std::string>(),
                                  j.contains("source_uri") ? std::optional<std::string>(j["source_uri"].get<std::string>())
                                                           : std::nullopt));
  }
  return docs;
}

}  // namespace hs
