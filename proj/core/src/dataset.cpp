#include "hs/dataset.hpp"

#include <fstream>
#include <unordered_set>

#include "hs/errors.hpp"
#include "hs/persist.hpp"
#include "hs/unicode.hpp"

namespace hs {

using nlohmann::json;

std::string_view to_string(SourceFormat f) {
  switch (f) {
    case SourceFormat::repliqa: return "repliqa";
    case SourceFormat::bioasq: return "bioasq";
    case SourceFormat::normalized: return "normalized";
  }
  return "unknown";
}

std::optional<SourceFormat> parse_source_format(std::string_view s) {
  for (auto f : {SourceFormat::repliqa, SourceFormat::bioasq, SourceFormat::normalized}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

FieldMapping FieldMapping::defaults_for(SourceFormat f) {
  FieldMapping m;
  switch (f) {
    case SourceFormat::repliqa:
      m.id = "question_id";
      m.question = "question";
      m.answer = "answer";
      m.gold_passage = "long_answer";
      m.document_id = "document_id";
      m.document_text = "document_extracted";
      m.unanswerable_field = "answer";
      m.unanswerable_value = "UNANSWERABLE";
      break;
    case SourceFormat::bioasq:
      m.id = "id";
      m.question = "question";
      m.answer = "answer";
      m.document_text = "passage";
      break;
    case SourceFormat::normalized:
      m.id = "id";
      m.question = "question";
      m.answer = "answer";
      m.gold_passage = "gold_passage";
      m.document_text = "document";
      break;
  }
  return m;
}

FieldMapping FieldMapping::from_json(SourceFormat f, const json& j) {
  auto m = defaults_for(f);
  if (j.is_null()) return m;
  if (!j.is_object()) throw ConfigError("dataset field mapping must be an object");
  m.id = j.value("id", m.id);
  m.question = j.value("question", m.question);
  m.answer = j.value("answer", m.answer);
  m.gold_passage = j.value("gold_passage", m.gold_passage);
  m.document_id = j.value("document_id", m.document_id);
  m.document_text = j.value("document_text", m.document_text);
  m.unanswerable_field = j.value("unanswerable_field", m.unanswerable_field);
  m.unanswerable_value = j.value("unanswerable_value", m.unanswerable_value);
  m.gold_missing_value = j.value("gold_missing_value", m.gold_missing_value);
  return m;
}

namespace {

std::optional<std::string> text_field(const json& obj, const std::string& name) {
  if (name.empty() || !obj.contains(name)) return std::nullopt;
  const auto& v = obj.at(name);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  // BioASQ keeps ideal answers as a list of strings.
  if (v.is_array() && !v.empty() && v.front().is_string()) return v.front().get<std::string>();
  return std::nullopt;
}

std::string check_record(const DatasetRecord& r) {
  if (r.id.empty()) return "missing id";
  if (unicode::trim(r.question).empty()) return "empty question";
  if (r.document.text.empty()) return "empty document text";
  if (r.gold_passage && r.document.text.find(*r.gold_passage) == std::string::npos)
    return "gold passage is not a substring of the document";
  return {};
}

}  // namespace

std::variant<DatasetRecord, std::string> map_record(const json& obj, SourceFormat format, const FieldMapping& m) {
  if (!obj.is_object()) return std::string("line is not a JSON object");
  DatasetRecord r;
  try {
    if (format == SourceFormat::normalized) {
      r = record_from_json(obj);
    } else {
      const auto id = text_field(obj, m.id);
      const auto question = text_field(obj, m.question);
      const auto doc_text = text_field(obj, m.document_text);
      if (!id) return "missing field '" + m.id + "'";
      if (!question) return "missing field '" + m.question + "'";
      if (!doc_text) return "missing field '" + m.document_text + "'";
      r.id = *id;
      r.question = *question;
      r.reference_answer = text_field(obj, m.answer).value_or("");
      const auto doc_id = m.document_id.empty() ? std::optional<std::string>("doc-" + r.id) : text_field(obj, m.document_id);
      if (!doc_id) return "missing field '" + m.document_id + "'";
      r.document = Document::make(*doc_id, *doc_text);
      if (!m.unanswerable_field.empty()) {
        // Booleans compare by their JSON spelling, so "true" matches true.
        const auto& f = m.unanswerable_field;
        const auto marker = obj.contains(f) && obj.at(f).is_boolean() ? std::optional<std::string>(obj.at(f).dump())
                                                                       : text_field(obj, f);
        r.unanswerable = marker && *marker == m.unanswerable_value;
      }
      if (!r.unanswerable) {
        const auto gold = text_field(obj, m.gold_passage);
        if (gold && !gold->empty() && *gold != m.gold_missing_value) r.gold_passage = unicode::nfc(*gold);
      }
    }
  } catch (const Error& e) {
    return std::string(e.what());
  } catch (const json::exception& e) {
    return std::string("malformed record: ") + e.what();
  }
  if (auto why = check_record(r); !why.empty()) return why;
  return r;
}

LoadResult load_dataset(const std::filesystem::path& path, SourceFormat format, const LoaderOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path.string());
  const auto mapping = options.mapping.value_or(FieldMapping::defaults_for(format));
  LoadResult out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": unparseable JSON");
    auto mapped = map_record(obj, format, mapping);
    if (auto* why = std::get_if<std::string>(&mapped)) {
      const auto id = obj.is_object() ? text_field(obj, mapping.id).value_or("") : "";
      out.quarantined.push_back({line_no, id, *why});
      continue;
    }
    auto& rec = std::get<DatasetRecord>(mapped);
    if (!ids.insert(rec.id).second) {
      out.quarantined.push_back({line_no, rec.id, "duplicate record id"});
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  const auto total = out.records.size() + out.quarantined.size();
  if (total && static_cast<double>(out.quarantined.size()) > options.max_quarantine_fraction * static_cast<double>(total)) {
    const auto& first = out.quarantined.front();
    throw DatasetError(path.string() + ": " + std::to_string(out.quarantined.size()) + " of " + std::to_string(total) +
                       " records failed validation (first at line " + std::to_string(first.line) + ": " +
                       first.reason + ")");
  }
  return out;
}

json record_to_source(const DatasetRecord& r, SourceFormat format, const FieldMapping& m) {
  if (format == SourceFormat::normalized) return to_json(r);
  json obj = json::object();
  obj[m.id] = r.id;
  obj[m.question] = r.question;
  obj[m.answer] = r.reference_answer;
  if (!m.document_id.empty()) obj[m.document_id] = r.document.id;
  obj[m.document_text] = r.document.text;
  if (!m.gold_passage.empty()) obj[m.gold_passage] = r.gold_passage.value_or(m.gold_missing_value);
  if (!m.unanswerable_field.empty() && r.unanswerable) obj[m.unanswerable_field] = m.unanswerable_value;
  return obj;
}

void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path, SourceFormat format,
                   const FieldMapping& mapping, bool overwrite) {
  std::vector<json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(record_to_source(r, format, mapping));
  write_jsonl(path, rows, overwrite);
}

}  // namespace hs
