#include "hs/persist.hpp"

#include <fstream>

#include "hs/errors.hpp"

namespace hs {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw DatasetError(std::string("missing field '") + name + "'");
  return j.at(name).get<T>();
}

std::optional<std::string> nullable_string(const json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return j.at(name).get<std::string>();
}

}  // namespace

json to_json(const PipelineAnswer& a) {
  json highlights = nullptr;
  if (a.highlights) {
    highlights = json::array();
    for (std::size_t i = 0; i < a.highlights->spans.size(); ++i) {
      const auto& s = a.highlights->spans[i];
      json h = {{"document_id", s.document_id}, {"start", s.start}, {"end", s.end}, {"text", s.text}};
      if (i < a.highlights->scores.size()) h["score"] = a.highlights->scores[i];
      highlights.push_back(std::move(h));
    }
  }
  return {{"id", a.question_id},
          {"pipeline", a.pipeline_name},
          {"answer", a.answer},
          {"declined", a.declined},
          {"guessed_question", a.guessed_question ? json(*a.guessed_question) : json(nullptr)},
          {"highlights", highlights},
          {"elapsed_s", a.elapsed_s},
          {"prompt_tokens", a.usage.prompt_tokens},
          {"completion_tokens", a.usage.completion_tokens}};
}

PipelineAnswer answer_from_json(const json& j) {
  PipelineAnswer a;
  a.question_id = field<std::string>(j, "id");
  a.pipeline_name = field<std::string>(j, "pipeline");
  a.answer = field<std::string>(j, "answer");
  a.declined = field<bool>(j, "declined");
  a.guessed_question = nullable_string(j, "guessed_question");
  if (j.contains("highlights") && !j["highlights"].is_null()) {
    HighlightSet hs;
    for (const auto& h : j["highlights"]) {
      hs.spans.push_back(Span{field<std::string>(h, "document_id"), field<std::size_t>(h, "start"),
                              field<std::size_t>(h, "end"), h.value("text", std::string())});
      hs.scores.push_back(h.value("score", 0.0));
    }
    a.highlights = std::move(hs);
  }
  a.elapsed_s = j.value("elapsed_s", 0.0);
  a.usage.prompt_tokens = j.value("prompt_tokens", 0LL);
  a.usage.completion_tokens = j.value("completion_tokens", 0LL);
  return a;
}

json to_json(const DatasetRecord& r) {
  json doc = {{"id", r.document.id}, {"text", r.document.text}};
  if (r.document.source_uri) doc["source_uri"] = *r.document.source_uri;
  return {{"id", r.id},
          {"question", r.question},
          {"answer", r.reference_answer},
          {"gold_passage", r.gold_passage ? json(*r.gold_passage) : json(nullptr)},
          {"document", doc},
          {"unanswerable", r.unanswerable}};
}

DatasetRecord record_from_json(const json& j) {
  DatasetRecord r;
  r.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
  r.question = field<std::string>(j, "question");
  r.reference_answer = j.value("answer", std::string());
  r.gold_passage = nullable_string(j, "gold_passage");
  const auto& doc = j.at("document");
  r.document = Document::make(field<std::string>(doc, "id"), field<std::string>(doc, "text"),
                              nullable_string(doc, "source_uri"));
  r.unanswerable = j.value("unanswerable", false);
  return r;
}

json to_json(const ScoredVerdict& v) {
  return {{"question_id", v.question_id},
          {"pipeline", v.pipeline},
          {"judge", std::string(to_string(v.verdict.kind))},
          {"score", v.verdict.score},
          {"explanation", v.verdict.explanation},
          {"clamped", v.verdict.clamped}};
}

ScoredVerdict verdict_from_json(const json& j) {
  ScoredVerdict v;
  v.question_id = field<std::string>(j, "question_id");
  v.pipeline = field<std::string>(j, "pipeline");
  const auto kind = parse_judge_kind(field<std::string>(j, "judge"));
  if (!kind) throw DatasetError("unknown judge kind: " + j.at("judge").dump());
  v.verdict.kind = *kind;
  v.verdict.score = field<int>(j, "score");
  v.verdict.explanation = j.value("explanation", std::string());
  v.verdict.clamped = j.value("clamped", false);
  return v;
}

json to_json(const BattleOutcome& b) {
  return {{"question_id", b.question_id},
          {"side_a", b.side_a},
          {"side_b", b.side_b},
          {"result", std::string(to_string(b.result))},
          {"presented_order_swapped", b.presented_order_swapped}};
}

BattleOutcome battle_from_json(const json& j) {
  BattleOutcome b;
  b.question_id = field<std::string>(j, "question_id");
  b.side_a = field<std::string>(j, "side_a");
  b.side_b = field<std::string>(j, "side_b");
  const auto r = parse_battle_result(field<std::string>(j, "result"));
  if (!r) throw DatasetError("unknown battle result: " + j.at("result").dump());
  b.result = *r;
  b.presented_order_swapped = field<bool>(j, "presented_order_swapped");
  return b;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path, bool overwrite) {
  if (std::filesystem::exists(path) && !overwrite)
    throw IoError("refusing to overwrite existing file " + path.string() + " (pass --overwrite)");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows, bool overwrite) {
  auto out = open_for_write(path, overwrite);
  for (const auto& r : rows) out << r.dump() << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": unparseable JSON");
    rows.push_back(std::move(j));
  }
  return rows;
}

void write_json(const std::filesystem::path& path, const json& doc, bool overwrite) {
  auto out = open_for_write(path, overwrite);
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

template <typename T, typename Fn>
std::vector<T> read_as(const std::filesystem::path& path, Fn&& convert) {
  std::vector<T> out;
  std::size_t i = 0;
  for (const auto& j : read_jsonl(path)) {
    ++i;
    try {
      out.push_back(convert(j));
    } catch (const json::exception& e) {
      throw DatasetError(path.string() + ": row " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<PipelineAnswer> read_answers(const std::filesystem::path& path) {
  return read_as<PipelineAnswer>(path, answer_from_json);
}

std::vector<ScoredVerdict> read_verdicts(const std::filesystem::path& path) {
  return read_as<ScoredVerdict>(path, verdict_from_json);
}

std::vector<BattleOutcome> read_battles(const std::filesystem::path& path) {
  return read_as<BattleOutcome>(path, battle_from_json);
}

}  // namespace hs
