#ifndef HIERSCORE_TAGTREE_HPP
#define HIERSCORE_TAGTREE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hierscore/error.hpp"
#include "hierscore/rational.hpp"

namespace hierscore {

// A tag is a plain token: non-empty, no whitespace, no ':', and never the
// reserved top-level marker "-". Hierarchy is explicit through parent links;
// dotted names like "A.1a" are just names.
using TagId = std::string;
using Lexeme = std::string;

bool is_valid_tag_id(std::string_view token);
// Lexeme and instance identifiers: non-empty, no whitespace.
bool is_valid_token(std::string_view token);

// One inventory line: tag under parent (or top-level), optional downward
// edge weight. Weights are normalized over siblings; without them the
// downward distribution is uniform.
struct InventoryRecord {
  Lexeme lexeme;
  TagId tag;
  std::optional<TagId> parent;
  std::optional<Rational> weight;
};

struct BuildError {
  ErrorKind kind;
  Lexeme lexeme;
  TagId tag;
  std::size_t record_index;  // into the input record list
  std::string message;
};

// Probability mass over the leaves of one lexeme's tag forest. Zero-mass
// leaves are omitted, so map equality is distribution equality.
struct LeafDistribution {
  Lexeme lexeme;
  std::map<TagId, Rational> mass;

  Rational total() const;
};

// The tag forest of a single lexeme. Top-level tags hang off an implicit
// virtual root that is never itself assignable and carries no mass.
// Immutable once built; every query is const.
class LexemeTree {
 public:
  bool has_tag(const TagId& tag) const;
  std::size_t tag_count() const { return nodes_.size(); }

  // Tags in definition order; top-level tags in definition order.
  std::vector<TagId> tags() const;
  const std::vector<TagId>& top_level() const { return root_ids_; }
  std::optional<TagId> parent_of(const TagId& tag) const;
  std::vector<TagId> children_of(const TagId& tag) const;
  std::optional<Rational> weight_of(const TagId& tag) const;
  bool is_leaf(const TagId& tag) const;

  // True iff `ancestor` lies on the path from `descendant` up to its
  // top-level tag, inclusive of `descendant` itself.
  bool is_ancestor_or_equal(const TagId& ancestor, const TagId& descendant) const;

  // Pr(target | ancestor) under the IS-A reading: 1 when target is at or
  // above `ancestor`, the product of per-edge downward probabilities when
  // target is strictly below, 0 when the two are unrelated.
  Rational downward_probability(const TagId& ancestor, const TagId& target) const;

  // Leaf descendants of `tag`; the tag itself when it is a leaf.
  std::set<TagId> leaves_under(const TagId& tag) const;

  // Maximal antichain of a disjunctive tag set: members with a strict
  // ancestor also in the set are redundant under IS-A and dropped.
  std::set<TagId> canonicalize_tag_set(const std::set<TagId>& tags) const;

  // Push a distribution over arbitrary tags down to the leaves. Masses must
  // be non-negative and sum to exactly 1.
  std::map<TagId, Rational> distribute_to_leaves(
      const std::map<TagId, Rational>& dist) const;

  bool operator==(const LexemeTree& other) const;

 private:
  friend class InventoryBuilder;

  struct Node {
    TagId id;
    int parent = -1;
    std::vector<int> children;
    std::optional<Rational> weight;
    Rational edge_prob;  // Pr(this | parent); unused for top-level tags
    int depth = 0;
  };

  int index_of(const TagId& tag) const;  // throws unknown_tag
  int ancestor_index(int node, int depth) const;

  std::vector<Node> nodes_;
  std::map<TagId, int> index_;
  std::vector<int> roots_;
  std::vector<TagId> root_ids_;
};

// Per-lexeme forest of tag trees: the universe of assignable tags.
class TagInventory {
 public:
  bool has_lexeme(const Lexeme& lexeme) const;
  const LexemeTree& tree(const Lexeme& lexeme) const;  // throws unknown_lexeme
  std::vector<Lexeme> lexemes() const;                 // sorted
  std::size_t tag_count() const;

  bool is_ancestor_or_equal(const Lexeme& lexeme, const TagId& ancestor,
                            const TagId& descendant) const;
  Rational downward_probability(const Lexeme& lexeme, const TagId& ancestor,
                                const TagId& target) const;
  std::set<TagId> leaves_under(const Lexeme& lexeme, const TagId& tag) const;
  std::set<TagId> canonicalize_tag_set(const Lexeme& lexeme,
                                       const std::set<TagId>& tags) const;
  LeafDistribution distribute_to_leaves(const Lexeme& lexeme,
                                        const std::map<TagId, Rational>& dist) const;

  bool operator==(const TagInventory& other) const;

 private:
  friend class InventoryBuilder;
  std::map<Lexeme, LexemeTree> entries_;
};

struct BuildResult {
  std::optional<TagInventory> inventory;  // set iff errors is empty
  std::vector<BuildError> errors;         // ordered by record index
};

// Validates and assembles an inventory, collecting every error. Parent
// records may appear after their children; children keep record order.
BuildResult try_build_inventory(const std::vector<InventoryRecord>& records);

// Throwing convenience wrapper: first error wins.
TagInventory build_inventory(const std::vector<InventoryRecord>& records);

}  // namespace hierscore

#endif
