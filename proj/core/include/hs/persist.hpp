#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "hs/domain.hpp"
#include "hs/elo.hpp"
#include "hs/judge.hpp"

namespace hs {

nlohmann::json to_json(const PipelineAnswer& a);
PipelineAnswer answer_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DatasetRecord& r);
DatasetRecord record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScoredVerdict& v);
ScoredVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BattleOutcome& b);
BattleOutcome battle_from_json(const nlohmann::json& j);

/// One compact JSON document per line, in order. An existing file is an
/// IoError unless `overwrite` is set.
void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& rows, bool overwrite);
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

/// Pretty-printed JSON document with sorted keys and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc, bool overwrite);

template <typename T>
void persist_results(const std::vector<T>& items, const std::filesystem::path& path, bool overwrite) {
  std::vector<nlohmann::json> rows;
  rows.reserve(items.size());
  for (const auto& it : items) rows.push_back(to_json(it));
  write_jsonl(path, rows, overwrite);
}

std::vector<PipelineAnswer> read_answers(const std::filesystem::path& path);
std::vector<ScoredVerdict> read_verdicts(const std::filesystem::path& path);
std::vector<BattleOutcome> read_battles(const std::filesystem::path& path);

}  // namespace hs
