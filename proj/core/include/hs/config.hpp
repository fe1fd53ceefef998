#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hs/dataset.hpp"
#include "hs/elo.hpp"
#include "hs/gateway.hpp"
#include "hs/http_backend.hpp"
#include "hs/pipeline.hpp"
#include "hs/security.hpp"

namespace hs {

struct GatewayConfig {
  enum class Backend { mock, http };
  Backend backend = Backend::mock;
  HttpSettings http;
  std::filesystem::path mock_rules;  // empty: no rules, every call gets the default
  std::string mock_default_response;
  GatewayOptions options;
};

struct DatasetConfig {
  std::filesystem::path path;
  SourceFormat format = SourceFormat::normalized;
  FieldMapping mapping = FieldMapping::defaults_for(SourceFormat::normalized);
  double max_quarantine_fraction = 0.01;
};

struct SecurityConfig {
  std::filesystem::path corpus;          // JSONL {"id", "prompt"}
  std::filesystem::path knowledge_base;  // JSONL {"id", "text"}
  ToolSpec tool;
  std::vector<std::string> pipelines;    // run end to end
  std::vector<std::string> probes;       // hs pipelines whose raw highlighter output is scanned
};

/// Everything a reproducible run needs. Relative paths resolve against the
/// directory holding the config file.
struct RunConfig {
  std::uint64_t seed = 0;
  GatewayConfig gateway;
  std::vector<PipelineSpec> pipelines;
  std::optional<DatasetConfig> dataset;
  std::filesystem::path output_dir = "out";
  std::optional<SecurityConfig> security;
  EloParams elo;
  std::size_t jobs = 1;

  /// Throws ConfigError when no pipeline has this name.
  const PipelineSpec& pipeline(const std::string& name) const;
};

/// Parses and validates a config document. Input files it names must exist.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
/// Throws IoError when the file is missing and ConfigError when it is invalid.
RunConfig load_run_config(const std::filesystem::path& path);

std::shared_ptr<const ChatBackend> make_backend(const GatewayConfig& cfg);

/// JSONL of `{"id", "text"}` documents.
std::vector<Document> load_documents(const std::filesystem::path& path);

}  // namespace hs
