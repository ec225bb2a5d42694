#ifndef HIERSCORE_SCORING_HPP
#define HIERSCORE_SCORING_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hierscore/rational.hpp"
#include "hierscore/tagtree.hpp"

namespace hierscore {

// One test occurrence of a lexeme. The surrounding context is not modeled;
// only its effect, the system's distribution, is input.
struct Instance {
  Lexeme lexeme;
  std::string instance_id;

  auto operator<=>(const Instance&) const = default;
};

// A system's probability mass over tags for one instance. Tags may be leaves
// or internal; mass on unlisted tags is implicitly zero.
struct OutputDistribution {
  std::map<TagId, Rational> mass;

  bool operator==(const OutputDistribution&) const = default;
};

// Disjunctive gold annotation: any member counts as correct.
struct TagSet {
  std::set<TagId> tags;

  bool operator==(const TagSet&) const = default;
};

struct InstanceScore {
  Instance instance;
  Rational score;
};

enum class ScoreMode { hierarchical, exact };

struct LexemeSummary {
  std::size_t count = 0;
  Rational mean;
};

struct ScoreReport {
  std::vector<InstanceScore> per_instance;  // sorted by (lexeme, instance id)
  std::map<Lexeme, LexemeSummary> per_lexeme;
  LexemeSummary overall;
  std::vector<Instance> skipped;  // key instances with no answer, scored 0
};

// Uniform distribution over a plain multi-tag output. Duplicates rejected.
OutputDistribution normalize_output(const std::vector<TagId>& tags);

// Probability the system assigns to any of the correct tags, with non-leaf
// tags read as under-specified: the key is canonicalized to an antichain and
// each output tag earns, per key tag, its full mass (key tag at or above it)
// or its mass times the downward probability (key tag strictly below it).
Rational score_instance(const TagInventory& inv, const Lexeme& lexeme,
                        const OutputDistribution& output, const TagSet& key);

// Baseline criterion: 1 iff the output is a point mass on a member of the
// key set as given (no canonicalization).
Rational exact_match_score(const OutputDistribution& output, const TagSet& key);

// Scores a whole run. Key instances with no answer score 0 and are listed as
// skipped; answers for instances outside the key are an error.
ScoreReport score_run(const TagInventory& inv,
                      const std::vector<std::pair<Instance, TagSet>>& key,
                      const std::vector<std::pair<Instance, OutputDistribution>>& answers,
                      ScoreMode mode);

}  // namespace hierscore

#endif
