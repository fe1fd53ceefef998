#include "commands.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hs/config.hpp"
#include "hs/dataset.hpp"
#include "hs/elo.hpp"
#include "hs/errors.hpp"
#include "hs/judge.hpp"
#include "hs/metrics.hpp"
#include "hs/parallel.hpp"
#include "hs/persist.hpp"
#include "hs/pipeline.hpp"
#include "hs/security.hpp"
#include "hs/unicode.hpp"

namespace hs::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunConfig load_config(const CommonOptions& o) {
  if (o.config.empty()) throw UsageError("--config is required");
  if (!fs::exists(o.config)) throw UsageError("config file not found: " + o.config);
  auto cfg = load_run_config(o.config);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.elo.seed = *o.seed;
  }
  if (o.jobs) cfg.jobs = *o.jobs;
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

SourceFormat format_or(const std::string& name, SourceFormat fallback) {
  if (name.empty()) return fallback;
  const auto f = parse_source_format(name);
  if (!f) throw UsageError("unknown dataset format '" + name + "'");
  return *f;
}

/// Dataset named on the command line, else the configured one.
LoadResult load_records(const CommonOptions& o, const RunConfig& cfg, std::ostream& err) {
  DatasetConfig ds;
  if (cfg.dataset) ds = *cfg.dataset;
  if (!o.dataset.empty()) {
    ds.path = o.dataset;
    const auto fmt = format_or(o.format, cfg.dataset ? cfg.dataset->format : SourceFormat::normalized);
    if (fmt != ds.format) ds.mapping = FieldMapping::defaults_for(fmt);
    ds.format = fmt;
  } else if (!cfg.dataset) {
    throw UsageError("no dataset: pass --dataset or set \"dataset\" in the config");
  }
  LoaderOptions lo;
  lo.mapping = ds.mapping;
  lo.max_quarantine_fraction = ds.max_quarantine_fraction;
  auto result = load_dataset(ds.path, ds.format, lo);
  for (const auto& q : result.quarantined) {
    err << "quarantined line " << q.line << " (" << q.id << "): " << q.reason << "\n";
  }
  return result;
}

std::vector<const PipelineSpec*> selected_pipelines(const CommonOptions& o, const RunConfig& cfg) {
  std::vector<const PipelineSpec*> out;
  if (o.pipelines.empty()) {
    for (const auto& p : cfg.pipelines) out.push_back(&p);
  } else {
    for (const auto& name : o.pipelines) out.push_back(&cfg.pipeline(name));
  }
  if (out.empty()) throw ConfigError("config defines no pipelines");
  return out;
}

/// Interactive questions carry no document association, so passthrough
/// retrieval falls back to lexical ranking.
PipelineSpec interactive_spec(PipelineSpec spec) {
  if (spec.retriever == RetrieverKind::passthrough) spec.retriever = RetrieverKind::lexical;
  return spec;
}

DocumentStore interactive_store(const CommonOptions& o, const RunConfig& cfg, std::ostream& err) {
  if (!o.dataset.empty() || cfg.dataset) return DocumentStore::from_records(load_records(o, cfg, err).records);
  if (cfg.security) return DocumentStore(load_documents(cfg.security->knowledge_base));
  throw UsageError("no documents: pass --dataset or configure a dataset or knowledge base");
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_answer(const PipelineAnswer& a, bool debug, std::ostream& out) {
  if (debug) {
    if (a.highlights) {
      out << "highlights (" << a.highlights->size() << "):\n";
      for (std::size_t i = 0; i < a.highlights->size(); ++i) {
        const auto& s = a.highlights->spans[i];
        out << "  [" << s.document_id << ":" << s.start << "-" << s.end << " score "
            << fixed(a.highlights->scores[i], 1) << "] " << s.text << "\n";
      }
    }
    if (a.guessed_question) out << "guessed question: " << *a.guessed_question << "\n";
    out << "answer: ";
  }
  out << a.answer << "\n";
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const DeclineMetrics& m) {
  return {{"true_positive", m.true_positive},   {"false_positive", m.false_positive},
          {"false_negative", m.false_negative}, {"true_negative", m.true_negative},
          {"precision", optional_number(m.precision)}, {"recall", optional_number(m.recall)},
          {"f1", optional_number(m.f1)}};
}

json to_json(const TokenMetricSummary& s) {
  return {{"count", s.count},
          {"excluded", s.excluded},
          {"k_precision", optional_number(s.k_precision)},
          {"recall", optional_number(s.recall)}};
}

fs::path results_path(const fs::path& dir, const std::string& pipeline) {
  return dir / ("results_" + pipeline + ".jsonl");
}

/// Stable 64-bit seed for one comparison, independent of scheduling order.
std::uint64_t battle_seed(std::uint64_t seed, const std::string& qid, const std::string& a, const std::string& b) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (const auto* s : {&qid, &a, &b}) {
    for (char c : *s) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  return h;
}

std::map<std::string, std::map<std::string, PipelineAnswer>> read_results(
    const fs::path& dir, const std::vector<const PipelineSpec*>& pipelines) {
  std::map<std::string, std::map<std::string, PipelineAnswer>> out;
  for (const auto* p : pipelines) {
    const auto path = results_path(dir, p->name);
    if (!fs::exists(path)) throw IoError("missing results file " + path.string() + " (run `hs eval run` first)");
    auto& by_id = out[p->name];
    for (auto& a : read_answers(path)) by_id.emplace(a.question_id, std::move(a));
  }
  return out;
}

}  // namespace

void cmd_ask(const CommonOptions& o, const std::string& question, Streams io) {
  const auto cfg = load_config(o);
  const auto spec = interactive_spec(cfg.pipeline(o.pipelines.at(0)));
  const auto store = interactive_store(o, cfg, io.err);
  Gateway gateway(make_backend(cfg.gateway), cfg.gateway.options);
  const auto answer = run_pipeline(Question::make("ask", question), spec, store, gateway);
  print_answer(answer, o.debug, io.out);
}

void cmd_repl(const CommonOptions& o, Streams io) {
  const auto cfg = load_config(o);
  const auto spec = interactive_spec(cfg.pipeline(o.pipelines.at(0)));
  const auto store = interactive_store(o, cfg, io.err);
  const auto backend = make_backend(cfg.gateway);
  io.out << "pipeline " << spec.name << ", " << store.size() << " documents. Empty line or :quit exits.\n";
  std::string line;
  for (std::size_t n = 1;; ++n) {
    io.out << "> " << std::flush;
    if (!std::getline(io.in, line)) break;
    const auto text = unicode::trim(line);
    if (text.empty() || text == ":quit" || text == ":q") break;
    Gateway gateway(backend, cfg.gateway.options);
    try {
      print_answer(run_pipeline(Question::make("repl-" + std::to_string(n), text), spec, store, gateway), o.debug,
                   io.out);
    } catch (const Error& e) {
      io.err << "error: " << e.what() << "\n";
    }
  }
}

void cmd_eval_run(const CommonOptions& o, Streams io) {
  const auto cfg = load_config(o);
  const auto pipelines = selected_pipelines(o, cfg);
  const auto loaded = load_records(o, cfg, io.err);
  const auto& records = loaded.records;
  const auto store = DocumentStore::from_records(records);
  const auto backend = make_backend(cfg.gateway);

  const bool any_gold = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.gold_passage; });
  json metrics = json::object();
  metrics["records"] = records.size();
  metrics["quarantined"] = loaded.quarantined.size();
  if (!any_gold) {
    metrics["notice"] = "dataset has no gold passages; gold-dependent metrics skipped";
    io.err << "notice: dataset has no gold passages; gold-dependent metrics skipped\n";
  }

  std::vector<PipelineAnswer> all;
  for (const auto* spec : pipelines) {
    std::vector<PipelineAnswer> answers(records.size());
    parallel_for(records.size(), cfg.jobs, [&](std::size_t i) {
      Gateway gateway(backend, cfg.gateway.options);
      answers[i] = run_pipeline(Question::make(records[i].id, records[i].question), *spec, store, gateway);
    });
    persist_results(answers, results_path(cfg.output_dir, spec->name), o.overwrite);
    json m = {{"pipeline", spec->name},
              {"answers", answers.size()},
              {"decline", to_json(decline_metrics(answers, records))}};
    const auto declined = std::count_if(answers.begin(), answers.end(), [](const auto& a) { return a.declined; });
    io.out << spec->name << ": " << answers.size() << " answers, " << declined << " declined\n";
    all.insert(all.end(), answers.begin(), answers.end());
    metrics["pipelines"][spec->name] = m;
  }

  for (const auto& [name, s] : answer_metrics(all, records)) metrics["pipelines"][name]["answer"] = to_json(s);
  for (const auto& [name, s] : guessed_question_metrics(all, records))
    metrics["pipelines"][name]["guessed_question"] = to_json(s);
  if (any_gold) {
    for (const auto& [name, s] : highlight_passage_metrics(all, records, store))
      metrics["pipelines"][name]["highlight_vs_gold"] = to_json(s);
    for (const auto& [name, counts] : substring_relation_counts(all, records, store))
      metrics["pipelines"][name]["substring_relations"] = counts;
  }
  write_json(cfg.output_dir / "metrics.json", metrics, o.overwrite);
  io.out << "wrote " << (cfg.output_dir / "metrics.json").string() << "\n";
}

void cmd_eval_judge(const CommonOptions& o, const std::vector<std::string>& judges, const std::string& results_dir,
                    Streams io) {
  const auto cfg = load_config(o);
  const auto pipelines = selected_pipelines(o, cfg);
  const auto records = load_records(o, cfg, io.err).records;
  std::vector<JudgeKind> kinds;
  for (const auto& name : judges) {
    const auto k = parse_judge_kind(name);
    if (!k) throw UsageError("unknown judge '" + name + "'");
    kinds.push_back(*k);
  }
  if (kinds.empty()) kinds = {JudgeKind::correctness, JudgeKind::relevance, JudgeKind::quality};

  const auto results = read_results(results_dir.empty() ? cfg.output_dir : fs::path(results_dir), pipelines);
  const auto backend = make_backend(cfg.gateway);

  json report = json::object();
  std::vector<ScoredVerdict> all;
  std::vector<PipelineAnswer> all_answers;
  for (const auto* spec : pipelines) {
    const auto& by_id = results.at(spec->name);
    struct Item {
      const DatasetRecord* record;
      const PipelineAnswer* answer;
      JudgeKind kind;
    };
    std::vector<Item> items;
    for (const auto& r : records) {
      const auto it = by_id.find(r.id);
      if (it == by_id.end()) continue;
      all_answers.push_back(it->second);
      for (auto k : kinds) items.push_back({&r, &it->second, k});
    }
    std::vector<std::optional<ScoredVerdict>> verdicts(items.size());
    parallel_for(items.size(), cfg.jobs, [&](std::size_t i) {
      Gateway gateway(backend, cfg.gateway.options);
      const auto& it = items[i];
      try {
        verdicts[i] = ScoredVerdict{spec->name, it.record->id,
                                    judge(it.kind, it.record->question, it.answer->answer,
                                          it.record->reference_answer, gateway)};
      } catch (const JudgeFailure&) {
      }
    });
    std::vector<ScoredVerdict> kept;
    std::map<std::string, std::size_t> failures;
    std::map<std::string, std::size_t> clamped;
    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto kind = std::string(to_string(items[i].kind));
      if (!verdicts[i]) {
        ++failures[kind];
        continue;
      }
      kept.push_back(*verdicts[i]);
      if (verdicts[i]->verdict.clamped) ++clamped[kind];
      sums[kind].first += verdicts[i]->verdict.score;
      ++sums[kind].second;
    }
    persist_results(kept, cfg.output_dir / ("verdicts_" + spec->name + ".jsonl"), o.overwrite);
    for (auto k : kinds) {
      const auto kind = std::string(to_string(k));
      const auto& [sum, n] = sums[kind];
      report["scores"][kind][spec->name] = {{"mean", n ? json(sum / static_cast<double>(n)) : json(nullptr)},
                                             {"count", n},
                                             {"failures", failures[kind]},
                                             {"clamped", clamped[kind]}};
    }
    all.insert(all.end(), kept.begin(), kept.end());
    io.out << spec->name << ": " << kept.size() << " verdicts\n";
  }

  const auto wins = wins_table(all);
  report["wins"] = {{"wins", wins.wins}, {"questions", wins.questions}, {"excluded", wins.excluded}};

  // Guessed-question K-Precision against quality, per hs pipeline.
  std::map<std::string, const DatasetRecord*> record_by_id;
  for (const auto& r : records) record_by_id[r.id] = &r;
  std::map<std::pair<std::string, std::string>, int> quality;
  for (const auto& v : all) {
    if (v.verdict.kind == JudgeKind::quality) quality[{v.pipeline, v.question_id}] = v.verdict.score;
  }
  for (const auto* spec : pipelines) {
    if (spec->kind != PipelineKind::hs) continue;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [qid, a] : results.at(spec->name)) {
      const auto q = quality.find({spec->name, qid});
      const auto r = record_by_id.find(qid);
      if (q == quality.end() || r == record_by_id.end() || !a.guessed_question) continue;
      try {
        xs.push_back(k_precision(*a.guessed_question, r->second->question));
        ys.push_back(q->second);
      } catch (const UndefinedMetric&) {
      }
    }
    json entry = {{"pairs", xs.size()}};
    try {
      entry["r"] = pearson(xs, ys);
    } catch (const Error& e) {
      entry["r"] = nullptr;
      entry["reason"] = e.what();
    }
    report["guessed_question_vs_quality"][spec->name] = entry;
  }
  write_json(cfg.output_dir / "judge_report.json", report, o.overwrite);
  io.out << "wrote " << (cfg.output_dir / "judge_report.json").string() << "\n";
}

void cmd_eval_battle(const CommonOptions& o, const std::string& results_dir, Streams io) {
  const auto cfg = load_config(o);
  const auto pipelines = selected_pipelines(o, cfg);
  if (pipelines.size() < 2) throw UsageError("eval battle needs at least two pipelines");
  const auto records = load_records(o, cfg, io.err).records;
  const auto results = read_results(results_dir.empty() ? cfg.output_dir : fs::path(results_dir), pipelines);
  const auto backend = make_backend(cfg.gateway);

  std::vector<ComparisonInput> inputs;
  for (const auto& r : records) {
    for (std::size_t i = 0; i < pipelines.size(); ++i) {
      for (std::size_t j = i + 1; j < pipelines.size(); ++j) {
        const auto& a = results.at(pipelines[i]->name);
        const auto& b = results.at(pipelines[j]->name);
        const auto ia = a.find(r.id);
        const auto ib = b.find(r.id);
        if (ia == a.end() || ib == b.end()) continue;
        inputs.push_back({r.id, r.question, pipelines[i]->name, ia->second.answer, pipelines[j]->name,
                          ib->second.answer});
      }
    }
  }

  std::vector<std::optional<BattleOutcome>> outcomes(inputs.size());
  parallel_for(inputs.size(), cfg.jobs, [&](std::size_t i) {
    Gateway gateway(backend, cfg.gateway.options);
    const auto& in = inputs[i];
    try {
      outcomes[i] = compare(in, gateway, battle_seed(cfg.seed, in.question_id, in.side_a, in.side_b));
    } catch (const JudgeFailure&) {
    }
  });
  std::vector<BattleOutcome> battles;
  for (auto& b : outcomes) {
    if (b) battles.push_back(std::move(*b));
  }
  const std::size_t failures = inputs.size() - battles.size();

  std::vector<std::string> names;
  for (const auto* p : pipelines) names.push_back(p->name);
  const auto table = elo(battles, cfg.elo, names);
  json win_rates = json::object();
  for (const auto& [name, rec] : win_records(battles)) {
    win_rates[name] = {{"wins", rec.wins},
                       {"losses", rec.losses},
                       {"ties", rec.ties},
                       {"both_unacceptable", rec.both_unacceptable},
                       {"win_rate", optional_number(rec.win_rate())}};
  }
  json report = {{"seed", cfg.seed},
                 {"pipelines", names},
                 {"battles", battles.size()},
                 {"judge_failures", failures},
                 {"elo",
                  {{"params", {{"initial", cfg.elo.initial}, {"k", cfg.elo.k}, {"permutations", cfg.elo.permutations}}},
                   {"ratings", table.ratings},
                   {"both_unacceptable", table.both_unacceptable}}},
                 {"win_rates", win_rates},
                 {"head_to_head", head_to_head(battles)}};
  persist_results(battles, cfg.output_dir / "battles.jsonl", o.overwrite);
  write_json(cfg.output_dir / "report.json", report, o.overwrite);
  for (const auto& [name, rating] : table.ratings) io.out << name << "  elo " << fixed(rating, 1) << "\n";
  io.out << "wrote " << (cfg.output_dir / "report.json").string() << "\n";
}

void cmd_security_run(const CommonOptions& o, Streams io) {
  const auto cfg = load_config(o);
  if (!cfg.security) throw ConfigError("config has no \"security\" section");
  const auto& sec = *cfg.security;
  const DocumentStore store(load_documents(sec.knowledge_base));
  const auto cases = load_attack_corpus(sec.corpus.string());

  std::vector<AttackConfiguration> configurations;
  for (const auto& name : sec.pipelines) configurations.push_back({name, interactive_spec(cfg.pipeline(name))});
  for (const auto& name : sec.probes) {
    configurations.push_back({name + "/highlighter-only", HighlighterProbe{interactive_spec(cfg.pipeline(name))}});
  }
  if (configurations.empty()) throw ConfigError("security section lists no pipelines or probes");

  AttackRunOptions options;
  options.gateway = cfg.gateway.options;
  options.jobs = cfg.jobs;
  const auto report = run_attack_corpus(cases, configurations, sec.tool, store, make_backend(cfg.gateway), options);

  io.out << std::left << std::setw(36) << "configuration" << std::setw(8) << "total" << std::setw(14) << "tool_called"
         << "valid_args\n";
  for (const auto& t : report.configurations) {
    io.out << std::setw(36) << t.configuration << std::setw(8) << t.total << std::setw(14)
           << (fixed(100.0 * t.called_rate(), 0) + "%") << fixed(100.0 * t.valid_rate(), 0) << "%\n";
  }
  json doc = {{"tool", hs::to_json(sec.tool)}, {"report", hs::to_json(report)}};
  write_json(cfg.output_dir / "security_report.json", doc, o.overwrite);
  io.out << "wrote " << (cfg.output_dir / "security_report.json").string() << "\n";
}

void cmd_dataset_convert(const CommonOptions& o, const std::string& to, Streams io) {
  std::optional<RunConfig> cfg;
  if (!o.config.empty()) cfg = load_config(o);
  const auto from = format_or(o.format, SourceFormat::normalized);
  const auto target = format_or(to, SourceFormat::normalized);
  auto mapping_for = [&](SourceFormat f) {
    if (cfg && cfg->dataset && cfg->dataset->format == f) return cfg->dataset->mapping;
    return FieldMapping::defaults_for(f);
  };
  LoaderOptions lo;
  lo.mapping = mapping_for(from);
  if (cfg && cfg->dataset) lo.max_quarantine_fraction = cfg->dataset->max_quarantine_fraction;
  const auto loaded = load_dataset(o.dataset, from, lo);
  for (const auto& q : loaded.quarantined) {
    io.err << "quarantined line " << q.line << " (" << q.id << "): " << q.reason << "\n";
  }
  write_dataset(loaded.records, o.out, target, mapping_for(target), o.overwrite);
  io.out << "wrote " << loaded.records.size() << " records to " << o.out << "\n";
}

}  // namespace hs::cli
