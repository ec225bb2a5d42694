#ifndef HIERSCORE_TESTS_SUPPORT_FIXTURES_HPP
#define HIERSCORE_TESTS_SUPPORT_FIXTURES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hierscore/rational.hpp"
#include "hierscore/scoring.hpp"
#include "hierscore/tagtree.hpp"

// Shared hand-checked fixtures. The "family" forest is the worked example
// used across the suite:
//
//   A           B
//   ├── A.1     ├── B.1
//   │   ├── A.1a├── B.2
//   │   └── A.1b└── B.3
//   └── A.2
//
// so Pr(A.1|A) = 1/2, Pr(A.1a|A) = 1/4, Pr(B.2|B) = 1/3.

namespace testsupport {

// Runs f and reports the ErrorKind it throws, nullopt when it returns.
template <typename F>
std::optional<hierscore::ErrorKind> thrown_kind(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const hierscore::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

using hierscore::InventoryRecord;
using hierscore::make_rational;
using hierscore::OutputDistribution;
using hierscore::Rational;
using hierscore::TagInventory;

inline std::vector<InventoryRecord> family_records() {
  return {
      {"w", "A", std::nullopt, std::nullopt},
      {"w", "A.1", "A", std::nullopt},
      {"w", "A.2", "A", std::nullopt},
      {"w", "A.1a", "A.1", std::nullopt},
      {"w", "A.1b", "A.1", std::nullopt},
      {"w", "B", std::nullopt, std::nullopt},
      {"w", "B.1", "B", std::nullopt},
      {"w", "B.2", "B", std::nullopt},
      {"w", "B.3", "B", std::nullopt},
  };
}

inline TagInventory family_inventory() {
  return hierscore::build_inventory(family_records());
}

inline std::string family_inventory_text() {
  return
      "# tag inventory for lexeme w\n"
      "w\tA\t-\n"
      "w\tA.1\tA\n"
      "w\tA.2\tA\n"
      "w\tA.1a\tA.1\n"
      "w\tA.1b\tA.1\n"
      "w\tB\t-\n"
      "w\tB.1\tB\n"
      "w\tB.2\tB\n"
      "w\tB.3\tB\n";
}

// The eleven hand-scored (key, output) rows on the family forest. Outputs
// are plain tag lists, i.e. uniform distributions.
struct WorkedRow {
  std::set<std::string> key;
  std::vector<std::string> output;
  Rational expected;
};

inline std::vector<WorkedRow> worked_rows() {
  return {
      {{"B"}, {"A"}, make_rational(0)},
      {{"A"}, {"A"}, make_rational(1)},
      {{"A"}, {"A.1"}, make_rational(1)},
      {{"A"}, {"A.1b"}, make_rational(1)},
      {{"A.1"}, {"A"}, make_rational(1, 2)},
      {{"A.1", "A.2"}, {"A"}, make_rational(1)},
      {{"A.1a"}, {"A"}, make_rational(1, 4)},
      {{"A.1a", "B.2"}, {"B"}, make_rational(1, 3)},
      {{"A.1a", "B.2"}, {"A.1"}, make_rational(1, 2)},
      {{"A.1a", "B.2"}, {"A.1", "B.2"}, make_rational(3, 4)},
      {{"A.1a", "B.2"}, {"A.1", "B"}, make_rational(5, 12)},
  };
}

// Mean of the eleven expected scores.
inline Rational worked_mean() { return make_rational(27, 44); }

// The same eleven rows as key/answer file text, instances 0001..0011.
inline std::string worked_key_text() {
  return
      "w\t0001\tB\n"
      "w\t0002\tA\n"
      "w\t0003\tA\n"
      "w\t0004\tA\n"
      "w\t0005\tA.1\n"
      "w\t0006\tA.1 A.2\n"
      "w\t0007\tA.1a\n"
      "w\t0008\tA.1a B.2\n"
      "w\t0009\tA.1a B.2\n"
      "w\t0010\tA.1a B.2\n"
      "w\t0011\tA.1a B.2\n";
}

inline std::string worked_answer_text() {
  return
      "w\t0001\tA\n"
      "w\t0002\tA\n"
      "w\t0003\tA.1\n"
      "w\t0004\tA.1b\n"
      "w\t0005\tA\n"
      "w\t0006\tA\n"
      "w\t0007\tA\n"
      "w\t0008\tB\n"
      "w\t0009\tA.1\n"
      "w\t0010\tA.1 B.2\n"
      "w\t0011\tA.1 B\n";
}

// Flat four-sense inventory; the correct sense of each test instance is "2".
inline std::vector<InventoryRecord> flat_records() {
  return {
      {"interest", "1", std::nullopt, std::nullopt},
      {"interest", "2", std::nullopt, std::nullopt},
      {"interest", "3", std::nullopt, std::nullopt},
      {"interest", "4", std::nullopt, std::nullopt},
  };
}

inline TagInventory flat_inventory() {
  return hierscore::build_inventory(flat_records());
}

// The four systems' published distributions over the flat senses, and the
// scores they earn against correct sense "2": .42, .05, .24, 0.
inline std::vector<OutputDistribution> flat_systems() {
  std::vector<OutputDistribution> systems(4);
  systems[0].mass = {{"1", make_rational(47, 100)},
                     {"2", make_rational(42, 100)},
                     {"3", make_rational(6, 100)},
                     {"4", make_rational(5, 100)}};
  systems[1].mass = {{"1", make_rational(85, 100)},
                     {"2", make_rational(5, 100)},
                     {"3", make_rational(5, 100)},
                     {"4", make_rational(5, 100)}};
  systems[2].mass = {{"1", make_rational(28, 100)},
                     {"2", make_rational(24, 100)},
                     {"3", make_rational(24, 100)},
                     {"4", make_rational(24, 100)}};
  systems[3].mass = {{"1", make_rational(1)},
                     {"2", make_rational(0)},
                     {"3", make_rational(0)},
                     {"4", make_rational(0)}};
  return systems;
}

inline std::vector<Rational> flat_expected_scores() {
  return {make_rational(42, 100), make_rational(5, 100), make_rational(24, 100),
          make_rational(0)};
}

// Two-leaf flat lexeme for agreement fixtures.
inline std::vector<InventoryRecord> coin_records() {
  return {
      {"coin", "heads", std::nullopt, std::nullopt},
      {"coin", "tails", std::nullopt, std::nullopt},
  };
}

// Degenerate one-tag lexeme: every annotation lands on the same leaf, so
// chance agreement is 1 and kappa is undefined.
inline std::vector<InventoryRecord> single_records() {
  return {{"solo", "only", std::nullopt, std::nullopt}};
}

}  // namespace testsupport

#endif
