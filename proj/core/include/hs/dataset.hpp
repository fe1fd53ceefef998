#pragma once

#include <filesystem>
#include <optional>
#include <variant>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hs/domain.hpp"

namespace hs {

enum class SourceFormat { repliqa, bioasq, normalized };

std::string_view to_string(SourceFormat f);
std::optional<SourceFormat> parse_source_format(std::string_view s);

/// Source field names for the repliqa- and bioasq-shaped loaders. The
/// unanswerable marker is a (field, value) pair because its spelling is a
/// dataset-version detail.
struct FieldMapping {
  std::string id;
  std::string question;
  std::string answer;
  std::string gold_passage;  // empty: the source has no gold passage
  std::string document_id;   // empty: derived as "doc-<record id>"
  std::string document_text;
  std::string unanswerable_field;  // empty: every record is answerable
  std::string unanswerable_value;
  std::string gold_missing_value = "NOT FOUND";

  static FieldMapping defaults_for(SourceFormat f);
  /// Overrides any field named in `j`.
  static FieldMapping from_json(SourceFormat f, const nlohmann::json& j);
};

struct LoaderOptions {
  std::optional<FieldMapping> mapping;  // defaults_for(format) when unset
  double max_quarantine_fraction = 0.01;
};

struct QuarantinedRecord {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct LoadResult {
  std::vector<DatasetRecord> records;
  std::vector<QuarantinedRecord> quarantined;
};

/// Reads one JSON object per line. Throws DatasetError on an unparseable
/// line (naming its number) or when more than `max_quarantine_fraction` of
/// the records fail validation.
LoadResult load_dataset(const std::filesystem::path& path, SourceFormat format, const LoaderOptions& options = {});

/// Maps one source object; returns the quarantine reason on failure.
std::variant<DatasetRecord, std::string> map_record(const nlohmann::json& obj, SourceFormat format,
                                                   const FieldMapping& mapping);

nlohmann::json record_to_source(const DatasetRecord& r, SourceFormat format, const FieldMapping& mapping);

/// Writes records in `format`. Refuses to replace an existing file unless `overwrite`.
void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path, SourceFormat format,
                   const FieldMapping& mapping, bool overwrite);

}  // namespace hs
