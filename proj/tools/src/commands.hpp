#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hs::cli {

/// Bad invocation: reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config;
  std::string dataset;
  std::string format;
  std::string out;
  std::vector<std::string> pipelines;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  bool overwrite = false;
  bool debug = false;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void cmd_ask(const CommonOptions& o, const std::string& question, Streams io);
void cmd_repl(const CommonOptions& o, Streams io);
void cmd_eval_run(const CommonOptions& o, Streams io);
void cmd_eval_judge(const CommonOptions& o, const std::vector<std::string>& judges, const std::string& results_dir,
                    Streams io);
void cmd_eval_battle(const CommonOptions& o, const std::string& results_dir, Streams io);
void cmd_security_run(const CommonOptions& o, Streams io);
void cmd_dataset_convert(const CommonOptions& o, const std::string& to, Streams io);

}  // namespace hs::cli
