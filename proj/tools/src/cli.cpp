#include "hs_cli/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hs/errors.hpp"

namespace hs::cli {

namespace {

void add_config(CLI::App* app, CommonOptions& o, bool required = true) {
  auto* opt = app->add_option("--config", o.config, "Run configuration (JSON)");
  if (required) opt->required();
}

void add_dataset(CLI::App* app, CommonOptions& o) {
  app->add_option("--dataset", o.dataset, "Dataset file, overriding the config");
  app->add_option("--format", o.format, "Dataset format: repliqa, bioasq or normalized");
}

void add_batch(CLI::App* app, CommonOptions& o) {
  app->add_option("--out", o.out, "Output directory, overriding the config");
  app->add_option("--jobs", o.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "Seed, overriding the config");
  app->add_flag("--overwrite", o.overwrite, "Replace existing output files");
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Highlight & Summarize question answering and evaluation", "hs"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string question;
  std::string to_format;
  std::string results_dir;
  std::vector<std::string> judges;

  auto* ask = app.add_subcommand("ask", "Answer one question with one pipeline");
  add_config(ask, o);
  add_dataset(ask, o);
  ask->add_option("--pipeline", o.pipelines, "Pipeline name")->required()->expected(1);
  ask->add_option("--question,-q", question, "Question text")->required();
  ask->add_option("--seed", o.seed, "Seed, overriding the config");
  ask->add_flag("--debug", o.debug, "Also print highlights and the guessed question");

  auto* repl = app.add_subcommand("repl", "Interactive question loop");
  add_config(repl, o);
  add_dataset(repl, o);
  repl->add_option("--pipeline", o.pipelines, "Pipeline name")->required()->expected(1);
  repl->add_option("--seed", o.seed, "Seed, overriding the config");
  repl->add_flag("--debug", o.debug, "Also print highlights and the guessed question");

  auto* eval = app.add_subcommand("eval", "Batch evaluation");
  eval->require_subcommand(1);
  auto* run = eval->add_subcommand("run", "Answer every dataset question with each pipeline");
  add_config(run, o);
  add_dataset(run, o);
  add_batch(run, o);
  run->add_option("--pipeline", o.pipelines, "Pipelines to run (default: all)");

  auto* judge = eval->add_subcommand("judge", "Score stored answers with the LLM judges");
  add_config(judge, o);
  add_dataset(judge, o);
  add_batch(judge, o);
  judge->add_option("--pipeline", o.pipelines, "Pipelines to judge (default: all)");
  judge->add_option("--judge", judges, "correctness, relevance or quality (default: all)");
  judge->add_option("--results", results_dir, "Directory holding results_<pipeline>.jsonl (default: --out)");

  auto* battle = eval->add_subcommand("battle", "Pairwise comparisons, Elo and win rates");
  add_config(battle, o);
  add_dataset(battle, o);
  add_batch(battle, o);
  battle->add_option("--pipeline", o.pipelines, "Pipelines to compare (default: all)");
  battle->add_option("--results", results_dir, "Directory holding results_<pipeline>.jsonl (default: --out)");

  auto* security = app.add_subcommand("security", "Prompt-injection harness");
  security->require_subcommand(1);
  auto* srun = security->add_subcommand("run", "Run the attack corpus against the configured targets");
  add_config(srun, o);
  add_batch(srun, o);

  auto* dataset = app.add_subcommand("dataset", "Dataset utilities");
  dataset->require_subcommand(1);
  auto* convert = dataset->add_subcommand("convert", "Convert a dataset between formats");
  add_config(convert, o, false);
  convert->add_option("--dataset", o.dataset, "Input dataset")->required();
  convert->add_option("--format", o.format, "Input format (default: normalized)");
  convert->add_option("--to", to_format, "Output format")->required();
  convert->add_option("--out", o.out, "Output file")->required();
  convert->add_flag("--overwrite", o.overwrite, "Replace an existing output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n";
    CLI::App* failed = &app;
    for (auto* sub = &app; sub != nullptr;) {
      auto subs = sub->get_subcommands();
      if (subs.empty()) break;
      sub = subs.front();
      failed = sub;
    }
    err << failed->help();
    return kExitUsage;
  }

  Streams io{in, out, err};
  try {
    if (*ask) cmd_ask(o, question, io);
    else if (*repl) cmd_repl(o, io);
    else if (*run) cmd_eval_run(o, io);
    else if (*judge) cmd_eval_judge(o, judges, results_dir, io);
    else if (*battle) cmd_eval_battle(o, results_dir, io);
    else if (*srun) cmd_security_run(o, io);
    else if (*convert) cmd_dataset_convert(o, to_format, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace hs::cli
