#ifndef HIERSCORE_TESTS_SUPPORT_GENERATORS_HPP
#define HIERSCORE_TESTS_SUPPORT_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hierscore/rational.hpp"
#include "hierscore/scoring.hpp"
#include "hierscore/tagtree.hpp"

// Deterministic random fixtures for the property tests. All generators draw
// from a caller-owned mt19937 so a failing case is reproducible from the
// test's fixed seed.

namespace testsupport {

inline int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// A random single-lexeme forest of 1..max_tags tags named t0, t1, ...
// Each tag attaches under an earlier tag or at the top level; each sibling
// group independently either carries weights on every edge or on none.
inline std::vector<hierscore::InventoryRecord> random_records(
    std::mt19937& rng, const std::string& lexeme, int max_tags) {
  int n = pick(rng, 1, max_tags);
  std::vector<hierscore::InventoryRecord> records;
  std::map<std::string, bool> group_weighted;  // "-" keys the top level
  for (int i = 0; i < n; ++i) {
    std::string tag = "t" + std::to_string(i);
    std::optional<std::string> parent;
    if (i > 0 && pick(rng, 0, 2) != 0) parent = "t" + std::to_string(pick(rng, 0, i - 1));
    auto [it, fresh] =
        group_weighted.try_emplace(parent ? *parent : "-", pick(rng, 0, 3) == 0);
    std::optional<hierscore::Rational> weight;
    if (it->second) weight = hierscore::make_rational(pick(rng, 1, 5));
    records.push_back({lexeme, std::move(tag), std::move(parent), std::move(weight)});
  }
  return records;
}

// 1..4 distinct tags with exact masses num/total; zero numerators are kept
// as explicit zero-mass entries.
inline hierscore::OutputDistribution random_output(std::mt19937& rng,
                                                   const hierscore::LexemeTree& tree) {
  std::vector<hierscore::TagId> tags = tree.tags();
  std::shuffle(tags.begin(), tags.end(), rng);
  int k = pick(rng, 1, std::min<int>(4, static_cast<int>(tags.size())));
  std::vector<long> numerators(k);
  long total = 0;
  for (long& num : numerators) {
    num = pick(rng, 0, 9);
    total += num;
  }
  if (total == 0) {
    numerators[0] = 1;
    total = 1;
  }
  hierscore::OutputDistribution output;
  for (int i = 0; i < k; ++i) {
    output.mass.emplace(tags[i], hierscore::make_rational(numerators[i], total));
  }
  return output;
}

inline hierscore::TagSet random_key(std::mt19937& rng,
                                    const hierscore::LexemeTree& tree) {
  std::vector<hierscore::TagId> tags = tree.tags();
  std::shuffle(tags.begin(), tags.end(), rng);
  int k = pick(rng, 1, std::min<int>(3, static_cast<int>(tags.size())));
  hierscore::TagSet key;
  key.tags.insert(tags.begin(), tags.begin() + k);
  return key;
}

// A strict descendant of `tag`, or nullopt for a leaf.
inline std::optional<hierscore::TagId> random_strict_descendant(
    std::mt19937& rng, const hierscore::LexemeTree& tree, const hierscore::TagId& tag) {
  std::vector<hierscore::TagId> below;
  std::vector<hierscore::TagId> frontier{tag};
  while (!frontier.empty()) {
    hierscore::TagId cur = std::move(frontier.back());
    frontier.pop_back();
    for (const hierscore::TagId& child : tree.children_of(cur)) {
      below.push_back(child);
      frontier.push_back(child);
    }
  }
  if (below.empty()) return std::nullopt;
  return below[pick(rng, 0, static_cast<int>(below.size()) - 1)];
}

// One refinement step: move some non-leaf entry's mass onto its children in
// proportion to the downward edge probabilities. Returns nullopt when every
// carried tag is a leaf. Repeating this to a fixed point reaches the leaf
// distribution.
inline std::optional<std::map<hierscore::TagId, hierscore::Rational>> refine_once(
    std::mt19937& rng, const hierscore::LexemeTree& tree,
    const std::map<hierscore::TagId, hierscore::Rational>& dist) {
  std::vector<hierscore::TagId> refinable;
  for (const auto& [tag, m] : dist) {
    if (!tree.is_leaf(tag)) refinable.push_back(tag);
  }
  if (refinable.empty()) return std::nullopt;
  const hierscore::TagId& chosen =
      refinable[pick(rng, 0, static_cast<int>(refinable.size()) - 1)];

  std::map<hierscore::TagId, hierscore::Rational> refined = dist;
  hierscore::Rational mass = refined.at(chosen);
  refined.erase(chosen);
  for (const hierscore::TagId& child : tree.children_of(chosen)) {
    refined[child] += mass * tree.downward_probability(chosen, child);
    if (refined[child] == 0) refined.erase(child);
  }
  return refined;
}

}  // namespace testsupport

#endif
