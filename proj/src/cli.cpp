#include "hierscore/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hierscore/agreement.hpp"
#include "hierscore/error.hpp"
#include "hierscore/formats.hpp"
#include "hierscore/rational.hpp"

namespace hierscore {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

void report_errors(const std::vector<ParseError>& errors, std::ostream& err) {
  for (const auto& e : errors) err << to_string(e) << '\n';
}

void render_score_report(const ScoreReport& report, const CliConfig& config,
                         std::ostream& out) {
  const int p = config.precision;
  if (config.output_format == OutputFormat::tsv) {
    for (const auto& row : report.per_instance) {
      out << row.instance.lexeme << '\t' << row.instance.instance_id << '\t'
          << render_fixed(row.score, p) << '\n';
    }
    for (const auto& instance : report.skipped) {
      out << "SKIPPED\t" << instance.lexeme << '\t' << instance.instance_id << '\n';
    }
    for (const auto& [lexeme, summary] : report.per_lexeme) {
      out << "LEXEME\t" << lexeme << '\t' << summary.count << '\t'
          << render_fixed(summary.mean, p) << '\n';
    }
    out << "OVERALL\t" << report.overall.count << '\t'
        << render_fixed(report.overall.mean, p) << '\n';
  } else {
    for (const auto& [lexeme, summary] : report.per_lexeme) {
      out << lexeme << ": n=" << summary.count
          << " mean=" << render_fixed(summary.mean, p) << '\n';
    }
    out << "OVERALL: n=" << report.overall.count
        << " mean=" << render_fixed(report.overall.mean, p) << '\n';
  }
}

void render_kappa_line(const KappaReport& report, const std::string& label,
                       int precision, std::ostream& out) {
  out << label << '\t' << report.n_instances << '\t'
      << render_fixed(report.pr_a, precision) << '\t'
      << render_fixed(report.pr_e, precision) << '\t';
  if (report.kappa.has_value()) {
    out << render_fixed(*report.kappa, precision);
  } else {
    out << "NA";
  }
  out << '\n';
}

}  // namespace

int run_score(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto inventory_text = read_file(config.inventory_path);
  if (!inventory_text) {
    err << "cannot read '" << config.inventory_path << "'\n";
    return 2;
  }
  auto key_text = read_file(config.key_path);
  if (!key_text) {
    err << "cannot read '" << config.key_path << "'\n";
    return 2;
  }
  auto answer_text = read_file(config.answers_path);
  if (!answer_text) {
    err << "cannot read '" << config.answers_path << "'\n";
    return 2;
  }

  auto inventory = parse_inventory_file(*inventory_text, config.inventory_path);
  if (!inventory.errors.empty() || !inventory.inventory.has_value()) {
    report_errors(inventory.errors, err);
    return 1;
  }
  auto key = parse_key_file(*key_text, config.key_path, *inventory.inventory);
  auto answers = parse_answer_file(*answer_text, config.answers_path,
                                   *inventory.inventory, {config.renormalize});
  if (!key.errors.empty() || !answers.errors.empty()) {
    report_errors(key.errors, err);
    report_errors(answers.errors, err);
    return 1;
  }

  ScoreReport report;
  try {
    report = score_run(*inventory.inventory, key.entries, answers.entries, config.mode);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }
  for (const auto& instance : report.skipped) {
    err << "warning: no answer for instance '" << instance.lexeme << ' '
        << instance.instance_id << "', scored 0\n";
  }
  render_score_report(report, config, out);
  return 0;
}

int run_kappa(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto inventory_text = read_file(config.inventory_path);
  if (!inventory_text) {
    err << "cannot read '" << config.inventory_path << "'\n";
    return 2;
  }
  auto ann1_text = read_file(config.ann1_path);
  if (!ann1_text) {
    err << "cannot read '" << config.ann1_path << "'\n";
    return 2;
  }
  auto ann2_text = read_file(config.ann2_path);
  if (!ann2_text) {
    err << "cannot read '" << config.ann2_path << "'\n";
    return 2;
  }

  auto inventory = parse_inventory_file(*inventory_text, config.inventory_path);
  if (!inventory.errors.empty() || !inventory.inventory.has_value()) {
    report_errors(inventory.errors, err);
    return 1;
  }
  auto ann1 = parse_key_file(*ann1_text, config.ann1_path, *inventory.inventory);
  auto ann2 = parse_key_file(*ann2_text, config.ann2_path, *inventory.inventory);
  if (!ann1.errors.empty() || !ann2.errors.empty()) {
    report_errors(ann1.errors, err);
    report_errors(ann2.errors, err);
    return 1;
  }

  // Both annotators must cover exactly the same instances.
  std::map<Instance, const TagSet*> first;
  for (const auto& [instance, tags] : ann1.entries) first.emplace(instance, &tags);
  std::map<Instance, const TagSet*> second;
  for (const auto& [instance, tags] : ann2.entries) second.emplace(instance, &tags);
  bool mismatch = false;
  for (const auto& [instance, tags] : first) {
    if (!second.count(instance)) {
      err << "instance '" << instance.lexeme << ' ' << instance.instance_id
          << "' missing from '" << config.ann2_path << "'\n";
      mismatch = true;
    }
  }
  for (const auto& [instance, tags] : second) {
    if (!first.count(instance)) {
      err << "instance '" << instance.lexeme << ' ' << instance.instance_id
          << "' missing from '" << config.ann1_path << "'\n";
      mismatch = true;
    }
  }
  if (mismatch) return 1;

  std::vector<AnnotationPair> pairs;
  pairs.reserve(first.size());
  for (const auto& [instance, tags] : first) {
    pairs.push_back({instance, *tags, *second.at(instance)});
  }

  std::vector<KappaReport> reports;
  std::vector<std::pair<Instance, Rational>> per_instance;
  std::optional<KappaReport> pooled;
  try {
    reports = kappa_run(*inventory.inventory, pairs, KappaScope::per_lexeme);
    if (config.pooled) {
      auto pooled_reports = kappa_run(*inventory.inventory, pairs, KappaScope::pooled);
      pooled = pooled_reports.at(0);
    }
    if (config.output_format == OutputFormat::tsv) {
      per_instance = per_instance_agreement(*inventory.inventory, pairs);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }

  if (config.output_format == OutputFormat::text) {
    out << "# lexeme\tn\tPr(A)\tPr(E)\tkappa\n";
  } else {
    for (const auto& [instance, agreement] : per_instance) {
      out << "PAIR\t" << instance.lexeme << '\t' << instance.instance_id << '\t'
          << render_fixed(agreement, config.precision) << '\n';
    }
  }
  for (const auto& report : reports) {
    render_kappa_line(report, *report.lexeme, config.precision, out);
  }
  if (pooled.has_value()) {
    render_kappa_line(*pooled, "POOLED", config.precision, out);
  }
  return 0;
}

int run_validate(const CliConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  bool all_ok = true;

  auto inventory_text = read_file(config.inventory_path);
  if (!inventory_text) {
    out << config.inventory_path << ": cannot read file\n";
    return 1;
  }
  auto inventory = parse_inventory_file(*inventory_text, config.inventory_path);
  if (inventory.errors.empty() && inventory.inventory.has_value()) {
    out << "OK " << config.inventory_path << '\n';
  } else {
    report_errors(inventory.errors, out);
    all_ok = false;
  }

  struct Dependent {
    const std::string* path;
    bool is_answers;
  };
  std::vector<Dependent> dependents;
  if (!config.key_path.empty()) dependents.push_back({&config.key_path, false});
  if (!config.answers_path.empty()) dependents.push_back({&config.answers_path, true});
  if (!config.ann1_path.empty()) dependents.push_back({&config.ann1_path, false});
  if (!config.ann2_path.empty()) dependents.push_back({&config.ann2_path, false});

  for (const auto& dependent : dependents) {
    const std::string& path = *dependent.path;
    auto text = read_file(path);
    if (!text) {
      out << path << ": cannot read file\n";
      all_ok = false;
      continue;
    }
    if (!inventory.inventory.has_value()) {
      out << path << ": not checked (inventory invalid)\n";
      continue;
    }
    std::vector<ParseError> errors;
    if (dependent.is_answers) {
      errors = parse_answer_file(*text, path, *inventory.inventory,
                                 {config.renormalize})
                   .errors;
    } else {
      errors = parse_key_file(*text, path, *inventory.inventory).errors;
    }
    if (errors.empty()) {
      out << "OK " << path << '\n';
    } else {
      report_errors(errors, out);
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  CLI::App app{"Score tagger output against tree-structured tag inventories."};
  app.require_subcommand(1);

  const std::map<std::string, ScoreMode> mode_names{
      {"hierarchical", ScoreMode::hierarchical}, {"exact", ScoreMode::exact}};
  const std::map<std::string, OutputFormat> format_names{
      {"text", OutputFormat::text}, {"tsv", OutputFormat::tsv}};

  auto add_format_options = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.output_format, "Report format (text or tsv)")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    cmd->add_option("--precision", config.precision,
                    "Decimal places in rendered scores")
        ->check(CLI::Range(1, 1000));
  };

  CLI::App* score = app.add_subcommand("score", "Score answers against a gold key");
  score->add_option("-i,--inventory", config.inventory_path, "Tag inventory file")
      ->required();
  score->add_option("-k,--key", config.key_path, "Gold-standard key file")->required();
  score->add_option("-a,--answers", config.answers_path, "Tagger answers file")
      ->required();
  score->add_option("-m,--mode", config.mode, "Scoring mode (hierarchical or exact)")
      ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
  score->add_flag("--renormalize", config.renormalize,
                  "Rescale answer lines whose decimal probabilities sum within "
                  "1e-6 of 1");
  add_format_options(score);

  CLI::App* kappa = app.add_subcommand(
      "kappa", "Measure inter-annotator agreement between two keys");
  kappa->add_option("-i,--inventory", config.inventory_path, "Tag inventory file")
      ->required();
  kappa->add_option("--ann1", config.ann1_path, "First annotator's key file")
      ->required();
  kappa->add_option("--ann2", config.ann2_path, "Second annotator's key file")
      ->required();
  kappa->add_flag("--pooled", config.pooled,
                  "Append a summary line that pools all lexemes");
  add_format_options(kappa);

  CLI::App* validate =
      app.add_subcommand("validate", "Check input files and report every problem");
  validate->add_option("-i,--inventory", config.inventory_path, "Tag inventory file")
      ->required();
  validate->add_option("-k,--key", config.key_path, "Gold-standard key file");
  validate->add_option("-a,--answers", config.answers_path, "Tagger answers file");
  validate->add_option("--ann1", config.ann1_path, "First annotator's key file");
  validate->add_option("--ann2", config.ann2_path, "Second annotator's key file");
  validate->add_flag("--renormalize", config.renormalize,
                     "Validate answer probabilities as if rescaling were enabled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  if (score->parsed()) {
    config.command = CliConfig::Command::score;
    return run_score(config, out, err);
  }
  if (kappa->parsed()) {
    config.command = CliConfig::Command::kappa;
    return run_kappa(config, out, err);
  }
  config.command = CliConfig::Command::validate;
  return run_validate(config, out, err);
}

}  // namespace hierscore
