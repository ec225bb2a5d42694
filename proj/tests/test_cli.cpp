#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hierscore/cli.hpp"
#include "support/fixtures.hpp"

using hierscore::run_cli;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "hierscore");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Fixture files live in a directory next to the test binary.
const std::string kDir = "cli_test_files";

std::string write_file(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(kDir);
  std::string path = kDir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

struct Fixture {
  std::string inv = write_file("inv.tsv", testsupport::family_inventory_text());
  std::string key = write_file("key.tsv", testsupport::worked_key_text());
  std::string answers = write_file("ans.tsv", testsupport::worked_answer_text());
};

const std::string kWorkedTsv =
    "w\t0001\t0.000000\n"
    "w\t0002\t1.000000\n"
    "w\t0003\t1.000000\n"
    "w\t0004\t1.000000\n"
    "w\t0005\t0.500000\n"
    "w\t0006\t1.000000\n"
    "w\t0007\t0.250000\n"
    "w\t0008\t0.333333\n"
    "w\t0009\t0.500000\n"
    "w\t0010\t0.750000\n"
    "w\t0011\t0.416667\n"
    "LEXEME\tw\t11\t0.613636\n"
    "OVERALL\t11\t0.613636\n";

}  // namespace

TEST_CASE("score renders the worked fixture byte for byte") {
  Fixture f;
  CliResult tsv = run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers,
                       "--format", "tsv"});
  CHECK(tsv.code == 0);
  CHECK(tsv.out == kWorkedTsv);
  CHECK(tsv.err.empty());

  CliResult text = run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers});
  CHECK(text.code == 0);
  CHECK(text.out == "w: n=11 mean=0.613636\nOVERALL: n=11 mean=0.613636\n");

  // repeated runs emit identical bytes
  CliResult again = run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers,
                         "--format", "tsv"});
  CHECK(again.out == tsv.out);
}

TEST_CASE("precision is honored end to end") {
  Fixture f;
  CliResult coarse = run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers,
                          "--format", "tsv", "--precision", "2"});
  CHECK(coarse.code == 0);
  CHECK(coarse.out.find("OVERALL\t11\t0.61\n") != std::string::npos);

  CliResult fine = run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers,
                        "--format", "tsv", "--precision", "8"});
  CHECK(fine.out.find("w\t0011\t0.41666667\n") != std::string::npos);
}

TEST_CASE("missing answers are scored zero and flagged") {
  Fixture f;
  std::string partial = write_file("ans_partial.tsv", [] {
    std::string text = testsupport::worked_answer_text();
    return text.substr(0, text.rfind("w\t0011"));
  }());

  CliResult tsv = run({"score", "-i", f.inv, "-k", f.key, "-a", partial,
                       "--format", "tsv"});
  CHECK(tsv.code == 0);
  CHECK(tsv.out.find("SKIPPED\tw\t0011\n") != std::string::npos);
  // (27/4 - 5/12) / 11 = 19/33
  CHECK(tsv.out.find("OVERALL\t11\t0.575758\n") != std::string::npos);
  CHECK(tsv.err.find("0011") != std::string::npos);
}

TEST_CASE("exact mode zeroes out every near miss") {
  std::string inv = write_file("flat_inv.tsv",
                               "interest\t1\t-\n"
                               "interest\t2\t-\n"
                               "interest\t3\t-\n"
                               "interest\t4\t-\n");
  std::string key = write_file("flat_key.tsv",
                               "interest\ti1\t2\n"
                               "interest\ti2\t2\n"
                               "interest\ti3\t2\n"
                               "interest\ti4\t2\n");
  std::string answers = write_file("flat_ans.tsv",
                                   "interest\ti1\t1:0.47 2:0.42 3:0.06 4:0.05\n"
                                   "interest\ti2\t1:0.85 2:0.05 3:0.05 4:0.05\n"
                                   "interest\ti3\t1:0.28 2:0.24 3:0.24 4:0.24\n"
                                   "interest\ti4\t1:1 2:0 3:0 4:0\n");

  CliResult hier = run({"score", "-i", inv, "-k", key, "-a", answers,
                        "--format", "tsv"});
  CHECK(hier.code == 0);
  CHECK(hier.out ==
        "interest\ti1\t0.420000\n"
        "interest\ti2\t0.050000\n"
        "interest\ti3\t0.240000\n"
        "interest\ti4\t0.000000\n"
        "LEXEME\tinterest\t4\t0.177500\n"
        "OVERALL\t4\t0.177500\n");

  CliResult exact = run({"score", "-i", inv, "-k", key, "-a", answers,
                         "--mode", "exact"});
  CHECK(exact.code == 0);
  CHECK(exact.out ==
        "interest: n=4 mean=0.000000\nOVERALL: n=4 mean=0.000000\n");
}

TEST_CASE("renormalization is opt-in") {
  Fixture f;
  std::string key = write_file("renorm_key.tsv", "w\t0001\tA.1a\n");
  std::string shy = write_file("renorm_ans.tsv",
                               "w\t0001\tA.1a:0.333333 A.1b:0.333333 A.2:0.333333\n");

  CliResult strict = run({"score", "-i", f.inv, "-k", key, "-a", shy});
  CHECK(strict.code == 1);
  CHECK(strict.err.find("sum-violation") != std::string::npos);
  CHECK(strict.out.empty());

  CliResult rescaled = run({"score", "-i", f.inv, "-k", key, "-a", shy,
                            "--renormalize", "--format", "tsv"});
  CHECK(rescaled.code == 0);
  CHECK(rescaled.out.find("w\t0001\t0.333333\n") != std::string::npos);
}

TEST_CASE("kappa renders agreement tables") {
  std::string inv = write_file("coin_inv.tsv", "coin\theads\t-\ncoin\ttails\t-\n");
  std::string ann1 = write_file("coin_ann1.tsv", "coin\t1\theads\ncoin\t2\ttails\n");
  std::string ann2 = write_file("coin_ann2.tsv", "coin\t1\theads\ncoin\t2\ttails\n");

  CliResult text = run({"kappa", "-i", inv, "--ann1", ann1, "--ann2", ann2});
  CHECK(text.code == 0);
  CHECK(text.out ==
        "# lexeme\tn\tPr(A)\tPr(E)\tkappa\n"
        "coin\t2\t1.000000\t0.500000\t1.000000\n");

  CliResult pooled = run({"kappa", "-i", inv, "--ann1", ann1, "--ann2", ann2,
                          "--pooled"});
  CHECK(pooled.out.find("POOLED\t2\t1.000000\t0.500000\t1.000000\n") !=
        std::string::npos);

  CliResult tsv = run({"kappa", "-i", inv, "--ann1", ann1, "--ann2", ann2,
                       "--format", "tsv"});
  CHECK(tsv.out ==
        "PAIR\tcoin\t1\t1.000000\n"
        "PAIR\tcoin\t2\t1.000000\n"
        "coin\t2\t1.000000\t0.500000\t1.000000\n");

  std::string flipped = write_file("coin_ann3.tsv", "coin\t1\ttails\ncoin\t2\theads\n");
  CliResult disagree = run({"kappa", "-i", inv, "--ann1", ann1, "--ann2", flipped});
  CHECK(disagree.out.find("coin\t2\t0.000000\t0.500000\t-1.000000\n") !=
        std::string::npos);
}

TEST_CASE("kappa reports NA when chance agreement is 1") {
  std::string inv = write_file("solo_inv.tsv", "solo\tonly\t-\n");
  std::string ann = write_file("solo_ann.tsv", "solo\t1\tonly\n");
  CliResult result = run({"kappa", "-i", inv, "--ann1", ann, "--ann2", ann});
  CHECK(result.code == 0);
  CHECK(result.out.find("solo\t1\t1.000000\t1.000000\tNA\n") != std::string::npos);
}

TEST_CASE("kappa requires identical instance coverage") {
  std::string inv = write_file("coin_inv.tsv", "coin\theads\t-\ncoin\ttails\t-\n");
  std::string ann1 = write_file("cover_ann1.tsv", "coin\t1\theads\ncoin\t2\ttails\n");
  std::string ann2 = write_file("cover_ann2.tsv", "coin\t1\theads\ncoin\t3\ttails\n");
  CliResult result = run({"kappa", "-i", inv, "--ann1", ann1, "--ann2", ann2});
  CHECK(result.code == 1);
  CHECK(result.err.find("coin 2") != std::string::npos);
  CHECK(result.err.find("coin 3") != std::string::npos);
}

TEST_CASE("validate reports every file") {
  Fixture f;
  CliResult ok = run({"validate", "-i", f.inv, "-k", f.key, "-a", f.answers});
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK " + f.inv + "\nOK " + f.key + "\nOK " + f.answers + "\n");

  std::string bad_key = write_file("bad_key.tsv", "w\t0001\tA.9\nw\t0001\tA\n");
  CliResult bad = run({"validate", "-i", f.inv, "-k", bad_key, "-a", f.answers});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("OK " + f.inv) != std::string::npos);
  CHECK(bad.out.find("bad_key.tsv:1: unknown-tag") != std::string::npos);
  CHECK(bad.out.find("OK " + f.answers) != std::string::npos);

  std::string dup_key = write_file("dup_key.tsv", "w\t0001\tA\nw\t0001\tB\n");
  CliResult dup = run({"validate", "-i", f.inv, "-k", dup_key});
  CHECK(dup.code == 1);
  CHECK(dup.out.find("dup_key.tsv:2: duplicate-instance") != std::string::npos);
  CHECK(dup.out.find("line 1") != std::string::npos);

  std::string bad_inv = write_file("bad_inv.tsv", "w\tA\tZZZ\n");
  CliResult skipped = run({"validate", "-i", bad_inv, "-k", f.key});
  CHECK(skipped.code == 1);
  CHECK(skipped.out.find("bad_inv.tsv:1: unknown-parent") != std::string::npos);
  CHECK(skipped.out.find("not checked") != std::string::npos);
}

TEST_CASE("parse failures exit 1 with diagnostics on stderr") {
  Fixture f;
  std::string bad_key = write_file("bad_key2.tsv", "w\t0001\tA.9\n");
  CliResult result = run({"score", "-i", f.inv, "-k", bad_key, "-a", f.answers});
  CHECK(result.code == 1);
  CHECK(result.out.empty());
  CHECK(result.err.find("bad_key2.tsv:1: unknown-tag") != std::string::npos);
}

TEST_CASE("usage problems exit 2") {
  Fixture f;
  CHECK(run({"score", "-i", "no_such_file.tsv", "-k", f.key, "-a", f.answers}).code ==
        2);
  CHECK(run({"score", "-i", f.inv, "-k", f.key}).code == 2);  // missing -a
  CHECK(run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers, "--bogus"}).code ==
        2);
  CHECK(run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers, "--mode", "fuzzy"})
            .code == 2);
  CHECK(run({"score", "-i", f.inv, "-k", f.key, "-a", f.answers, "--precision", "0"})
            .code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);

  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("score") != std::string::npos);
  CHECK(help.out.find("kappa") != std::string::npos);
  CHECK(help.out.find("validate") != std::string::npos);
}
