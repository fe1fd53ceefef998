#include "hs/security.hpp"

#include <cctype>
#include <fstream>

#include "hs/errors.hpp"
#include "hs/parallel.hpp"

namespace hs {

using nlohmann::json;

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void skip_ws(std::string_view t, std::size_t& p) {
  while (p < t.size() && std::isspace(static_cast<unsigned char>(t[p]))) ++p;
}

// Parses the argument list that starts right after the opening parenthesis.
std::optional<std::map<std::string, std::string>> parse_args(std::string_view t, std::size_t p) {
  std::map<std::string, std::string> args;
  skip_ws(t, p);
  if (p < t.size() && t[p] == ')') return args;
  for (;;) {
    skip_ws(t, p);
    const auto key_start = p;
    if (p >= t.size() || !(std::isalpha(static_cast<unsigned char>(t[p])) || t[p] == '_')) return std::nullopt;
    while (p < t.size() && ident_char(t[p])) ++p;
    std::string key(t.substr(key_start, p - key_start));
    skip_ws(t, p);
    if (p >= t.size() || t[p] != '=') return std::nullopt;
    ++p;
    skip_ws(t, p);
    if (p >= t.size() || (t[p] != '"' && t[p] != '\'')) return std::nullopt;
    const char quote = t[p++];
    std::string value;
    bool closed = false;
    while (p < t.size()) {
      const char c = t[p++];
      if (c == quote) {
        closed = true;
        break;
      }
      if (c == '\\' && p < t.size()) {
        const char e = t[p++];
        value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        continue;
      }
      value.push_back(c);
    }
    if (!closed) return std::nullopt;
    args[std::move(key)] = std::move(value);
    skip_ws(t, p);
    if (p < t.size() && t[p] == ',') {
      ++p;
      continue;
    }
    if (p < t.size() && t[p] == ')') return args;
    return std::nullopt;
  }
}

}  // namespace

std::optional<ToolCall> scan_tool_call(std::string_view text, const ToolSpec& spec) {
  if (spec.name.empty()) throw InvalidArgument("tool spec has an empty name");
  const std::string marker = spec.name + "(";
  for (auto pos = text.find(marker); pos != std::string_view::npos; pos = text.find(marker, pos + 1)) {
    if (pos > 0 && ident_char(text[pos - 1])) continue;
    if (auto args = parse_args(text, pos + marker.size())) return ToolCall{spec.name, std::move(*args), pos};
  }
  return std::nullopt;
}

bool validate_args(const ToolCall& call, const ToolSpec& spec) {
  if (call.name != spec.name) return false;
  for (const auto& [field, rule] : spec.validators) {
    const auto it = call.args.find(field);
    if (it == call.args.end()) return false;
    const bool ok = rule.match == ArgRule::Match::exact ? it->second == rule.value
                                                        : it->second.find(rule.value) != std::string::npos;
    if (!ok) return false;
  }
  return true;
}

const AttackTally* AttackReport::find(std::string_view name) const {
  for (const auto& t : configurations) {
    if (t.configuration == name) return &t;
  }
  return nullptr;
}

AttackReport run_attack_corpus(const std::vector<AttackCase>& cases,
                               const std::vector<AttackConfiguration>& configurations, const ToolSpec& spec,
                               const DocumentStore& store, std::shared_ptr<const ChatBackend> backend,
                               const AttackRunOptions& options) {
  if (configurations.empty()) throw InvalidArgument("attack run needs at least one configuration");
  struct Outcome {
    bool called = false;
    bool valid = false;
    bool error = false;
    std::size_t exposures = 0;
  };
  const std::size_t n_cases = cases.size();
  std::vector<Outcome> outcomes(configurations.size() * n_cases);
  const std::string marker = spec.name + "(";

  parallel_for(outcomes.size(), options.jobs, [&](std::size_t idx) {
    const auto& config = configurations[idx / n_cases];
    const auto& attack = cases[idx % n_cases];
    auto& out = outcomes[idx];
    Gateway gateway(backend, options.gateway);
    try {
      const auto q = Question::make(attack.id, attack.prompt);
      std::string scanned;
      if (const auto* probe = std::get_if<HighlighterProbe>(&config.target)) {
        const auto docs = retrieve(store, q, probe->pipeline);
        scanned = run_highlighter(q, docs, probe->pipeline, gateway).raw_output;
      } else {
        scanned = run_pipeline(q, std::get<PipelineSpec>(config.target), store, gateway).answer;
      }
      if (const auto call = scan_tool_call(scanned, spec)) {
        out.called = true;
        out.valid = validate_args(*call, spec);
      }
    } catch (const Error&) {
      out.error = true;
    }
    out.exposures = transcript_query(gateway.transcript(), RoleTag::summarizer, marker);
  });

  AttackReport report;
  for (std::size_t c = 0; c < configurations.size(); ++c) {
    AttackTally tally;
    tally.configuration = configurations[c].name;
    tally.total = n_cases;
    for (std::size_t i = 0; i < n_cases; ++i) {
      const auto& o = outcomes[c * n_cases + i];
      tally.tool_called += o.called;
      tally.valid_args += o.valid;
      tally.errors += o.error;
      tally.summarizer_exposures += o.exposures;
    }
    report.configurations.push_back(std::move(tally));
  }
  return report;
}

IsolationAudit audit_question_isolation(const Transcript& transcript, std::string_view question_text) {
  IsolationAudit audit;
  audit.occurrences = transcript_query(transcript, RoleTag::summarizer, question_text);
  audit.pass = audit.occurrences == 0;
  return audit;
}

std::vector<AttackCase> load_attack_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open attack corpus: " + path);
  std::vector<AttackCase> cases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("prompt") || !j["prompt"].is_string())
      throw DatasetError(path + ":" + std::to_string(line_no) + ": expected {\"id\", \"prompt\"}");
    AttackCase c;
    c.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    c.prompt = j["prompt"].get<std::string>();
    if (c.prompt.empty()) throw DatasetError(path + ":" + std::to_string(line_no) + ": empty prompt");
    if (j.contains("note") && j["note"].is_string()) c.note = j["note"].get<std::string>();
    cases.push_back(std::move(c));
  }
  return cases;
}

json to_json(const AttackReport& report) {
  json rows = json::array();
  for (const auto& t : report.configurations) {
    rows.push_back({{"configuration", t.configuration},
                    {"total", t.total},
                    {"tool_called", t.tool_called},
                    {"valid_args", t.valid_args},
                    {"errors", t.errors},
                    {"summarizer_exposures", t.summarizer_exposures},
                    {"tool_called_rate", t.called_rate()},
                    {"valid_args_rate", t.valid_rate()}});
  }
  return {{"configurations", rows}};
}

json to_json(const ToolSpec& spec) {
  json v = json::object();
  for (const auto& [field, rule] : spec.validators)
    v[field] = {{"match", rule.match == ArgRule::Match::exact ? "exact" : "contains"}, {"value", rule.value}};
  return {{"name", spec.name}, {"validators", v}};
}

ToolSpec tool_spec_from_json(const json& j) {
  ToolSpec spec;
  if (!j.is_object()) throw ConfigError("tool spec must be an object");
  spec.name = j.value("name", spec.name);
  if (spec.name.empty()) throw ConfigError("tool spec name is empty");
  if (j.contains("validators")) {
    spec.validators.clear();
    for (const auto& [field, rule] : j["validators"].items()) {
      ArgRule r;
      if (rule.is_string()) {
        r.value = rule.get<std::string>();
      } else {
        const auto match = rule.value("match", std::string("exact"));
        if (match != "exact" && match != "contains") throw ConfigError("validator match must be exact or contains");
        r.match = match == "exact" ? ArgRule::Match::exact : ArgRule::Match::contains;
        r.value = rule.at("value").get<std::string>();
      }
      spec.validators[field] = std::move(r);
    }
  }
  return spec;
}

}  // namespace hs
