#ifndef HIERSCORE_CLI_HPP
#define HIERSCORE_CLI_HPP

#include <iosfwd>
#include <string>

#include "hierscore/scoring.hpp"

namespace hierscore {

enum class OutputFormat { text, tsv };

// Exit codes: 0 success, 1 validation error in an input file, 2 usage error.
struct CliConfig {
  enum class Command { score, kappa, validate };

  Command command = Command::score;
  std::string inventory_path;
  std::string key_path;
  std::string answers_path;
  std::string ann1_path;
  std::string ann2_path;
  ScoreMode mode = ScoreMode::hierarchical;
  bool renormalize = false;
  bool pooled = false;  // kappa: add the pooled summary line
  OutputFormat output_format = OutputFormat::text;
  int precision = 6;
};

// Reports go to `out`, diagnostics to `err`. The report bytes are a pure
// function of the input files and config.
int run_score(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_kappa(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_validate(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to the command runners.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hierscore

#endif
