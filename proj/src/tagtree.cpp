#include "hierscore/tagtree.hpp"

#include <algorithm>
#include <cctype>

namespace hierscore {

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (std::isspace(c)) return false;
  }
  return true;
}

bool is_valid_tag_id(std::string_view token) {
  if (!is_valid_token(token)) return false;
  if (token == "-") return false;
  return token.find(':') == std::string_view::npos;
}

Rational LeafDistribution::total() const {
  Rational sum = 0;
  for (const auto& [tag, m] : mass) sum += m;
  return sum;
}

// ---------------------------------------------------------------------------
// LexemeTree queries

int LexemeTree::index_of(const TagId& tag) const {
  auto it = index_.find(tag);
  if (it == index_.end()) {
    throw Error(ErrorKind::unknown_tag, "tag '" + tag + "' is not in the inventory");
  }
  return it->second;
}

bool LexemeTree::has_tag(const TagId& tag) const { return index_.count(tag) != 0; }

std::vector<TagId> LexemeTree::tags() const {
  std::vector<TagId> out;
  out.reserve(nodes_.size());
  for (const Node& n : nodes_) out.push_back(n.id);
  return out;
}

std::optional<TagId> LexemeTree::parent_of(const TagId& tag) const {
  const Node& n = nodes_[index_of(tag)];
  if (n.parent < 0) return std::nullopt;
  return nodes_[n.parent].id;
}

std::vector<TagId> LexemeTree::children_of(const TagId& tag) const {
  const Node& n = nodes_[index_of(tag)];
  std::vector<TagId> out;
  out.reserve(n.children.size());
  for (int c : n.children) out.push_back(nodes_[c].id);
  return out;
}

std::optional<Rational> LexemeTree::weight_of(const TagId& tag) const {
  return nodes_[index_of(tag)].weight;
}

bool LexemeTree::is_leaf(const TagId& tag) const {
  return nodes_[index_of(tag)].children.empty();
}

int LexemeTree::ancestor_index(int node, int depth) const {
  while (nodes_[node].depth > depth) node = nodes_[node].parent;
  return node;
}

bool LexemeTree::is_ancestor_or_equal(const TagId& ancestor, const TagId& descendant) const {
  int a = index_of(ancestor);
  int d = index_of(descendant);
  if (nodes_[a].depth > nodes_[d].depth) return false;
  return ancestor_index(d, nodes_[a].depth) == a;
}

Rational LexemeTree::downward_probability(const TagId& ancestor, const TagId& target) const {
  int a = index_of(ancestor);
  int t = index_of(target);
  // upward (or equal): certainty under IS-A
  if (nodes_[t].depth <= nodes_[a].depth) {
    return ancestor_index(a, nodes_[t].depth) == t ? Rational(1) : Rational(0);
  }
  Rational product = 1;
  int cur = t;
  while (nodes_[cur].depth > nodes_[a].depth) {
    product *= nodes_[cur].edge_prob;
    cur = nodes_[cur].parent;
  }
  return cur == a ? product : Rational(0);
}

std::set<TagId> LexemeTree::leaves_under(const TagId& tag) const {
  std::set<TagId> out;
  std::vector<int> stack{index_of(tag)};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    const Node& n = nodes_[cur];
    if (n.children.empty()) {
      out.insert(n.id);
    } else {
      stack.insert(stack.end(), n.children.begin(), n.children.end());
    }
  }
  return out;
}

std::set<TagId> LexemeTree::canonicalize_tag_set(const std::set<TagId>& tags) const {
  if (tags.empty()) throw Error(ErrorKind::empty_tag_set, "tag set is empty");
  std::set<int> members;
  for (const TagId& tag : tags) members.insert(index_of(tag));
  std::set<TagId> out;
  for (int m : members) {
    bool redundant = false;
    for (int cur = nodes_[m].parent; cur >= 0; cur = nodes_[cur].parent) {
      if (members.count(cur)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.insert(nodes_[m].id);
  }
  return out;
}

std::map<TagId, Rational> LexemeTree::distribute_to_leaves(
    const std::map<TagId, Rational>& dist) const {
  Rational sum = 0;
  for (const auto& [tag, m] : dist) {
    index_of(tag);
    if (m < 0) {
      throw Error(ErrorKind::invalid_distribution,
                  "negative mass on tag '" + tag + "'");
    }
    sum += m;
  }
  if (sum != 1) {
    throw Error(ErrorKind::invalid_distribution,
                "masses sum to " + to_exact_string(sum) + ", expected 1");
  }

  std::map<TagId, Rational> leaves;
  std::vector<std::pair<int, Rational>> stack;
  for (const auto& [tag, m] : dist) {
    if (m == 0) continue;
    stack.emplace_back(index_of(tag), m);
    while (!stack.empty()) {
      auto [cur, mass] = std::move(stack.back());
      stack.pop_back();
      const Node& n = nodes_[cur];
      if (n.children.empty()) {
        leaves[n.id] += mass;
      } else {
        for (int c : n.children) {
          stack.emplace_back(c, mass * nodes_[c].edge_prob);
        }
      }
    }
  }
  return leaves;
}

bool LexemeTree::operator==(const LexemeTree& other) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  if (root_ids_ != other.root_ids_) return false;
  for (const Node& n : nodes_) {
    auto it = other.index_.find(n.id);
    if (it == other.index_.end()) return false;
    const Node& o = other.nodes_[it->second];
    if (n.weight.has_value() != o.weight.has_value()) return false;
    if (n.weight && *n.weight != *o.weight) return false;
    std::optional<TagId> np =
        n.parent < 0 ? std::nullopt : std::optional<TagId>(nodes_[n.parent].id);
    std::optional<TagId> op =
        o.parent < 0 ? std::nullopt : std::optional<TagId>(other.nodes_[o.parent].id);
    if (np != op) return false;
    if (n.children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (nodes_[n.children[i]].id != other.nodes_[o.children[i]].id) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// TagInventory

bool TagInventory::has_lexeme(const Lexeme& lexeme) const {
  return entries_.count(lexeme) != 0;
}

const LexemeTree& TagInventory::tree(const Lexeme& lexeme) const {
  auto it = entries_.find(lexeme);
  if (it == entries_.end()) {
    throw Error(ErrorKind::unknown_lexeme, "lexeme '" + lexeme + "' is not in the inventory");
  }
  return it->second;
}

std::vector<Lexeme> TagInventory::lexemes() const {
  std::vector<Lexeme> out;
  out.reserve(entries_.size());
  for (const auto& [lex, t] : entries_) out.push_back(lex);
  return out;
}

std::size_t TagInventory::tag_count() const {
  std::size_t n = 0;
  for (const auto& [lex, t] : entries_) n += t.tag_count();
  return n;
}

bool TagInventory::is_ancestor_or_equal(const Lexeme& lexeme, const TagId& ancestor,
                                        const TagId& descendant) const {
  return tree(lexeme).is_ancestor_or_equal(ancestor, descendant);
}

Rational TagInventory::downward_probability(const Lexeme& lexeme, const TagId& ancestor,
                                            const TagId& target) const {
  return tree(lexeme).downward_probability(ancestor, target);
}

std::set<TagId> TagInventory::leaves_under(const Lexeme& lexeme, const TagId& tag) const {
  return tree(lexeme).leaves_under(tag);
}

std::set<TagId> TagInventory::canonicalize_tag_set(const Lexeme& lexeme,
                                                   const std::set<TagId>& tags) const {
  return tree(lexeme).canonicalize_tag_set(tags);
}

LeafDistribution TagInventory::distribute_to_leaves(
    const Lexeme& lexeme, const std::map<TagId, Rational>& dist) const {
  return LeafDistribution{lexeme, tree(lexeme).distribute_to_leaves(dist)};
}

bool TagInventory::operator==(const TagInventory& other) const {
  return entries_ == other.entries_;
}

// ---------------------------------------------------------------------------
// Construction

class InventoryBuilder {
 public:
  explicit InventoryBuilder(const std::vector<InventoryRecord>& records)
      : records_(records) {}

  BuildResult run() {
    if (records_.empty()) {
      error(ErrorKind::empty_inventory, "", "", 0, "no inventory records");
      return finish();
    }
    collect();
    for (auto& [lexeme, lex] : lexemes_) {
      link(lexeme, lex);
      detect_cycles(lexeme, lex);
      check_weights(lexeme, lex);
    }
    if (errors_.empty()) {
      TagInventory inv;
      for (auto& [lexeme, lex] : lexemes_) {
        finalize(lex.tree);
        inv.entries_.emplace(lexeme, std::move(lex.tree));
      }
      std::sort(errors_.begin(), errors_.end(),
                [](const BuildError& a, const BuildError& b) {
                  return a.record_index < b.record_index;
                });
      return BuildResult{std::move(inv), std::move(errors_)};
    }
    return finish();
  }

 private:
  struct PendingLexeme {
    LexemeTree tree;
    std::vector<std::size_t> record_of_node;  // node index -> record index
    std::vector<std::optional<TagId>> parent_token;
  };

  void error(ErrorKind kind, const Lexeme& lexeme, const TagId& tag,
             std::size_t record, std::string message) {
    errors_.push_back(BuildError{kind, lexeme, tag, record, std::move(message)});
  }

  BuildResult finish() {
    std::sort(errors_.begin(), errors_.end(),
              [](const BuildError& a, const BuildError& b) {
                return a.record_index < b.record_index;
              });
    return BuildResult{std::nullopt, std::move(errors_)};
  }

  void collect() {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const InventoryRecord& rec = records_[i];
      if (!is_valid_token(rec.lexeme)) {
        error(ErrorKind::invalid_token, rec.lexeme, rec.tag, i,
              "lexeme '" + rec.lexeme + "' is not a valid token");
        continue;
      }
      if (!is_valid_tag_id(rec.tag)) {
        error(ErrorKind::invalid_tag, rec.lexeme, rec.tag, i,
              "tag '" + rec.tag + "' is not a valid tag id");
        continue;
      }
      PendingLexeme& lex = lexemes_[rec.lexeme];
      if (lex.tree.index_.count(rec.tag)) {
        error(ErrorKind::duplicate_tag, rec.lexeme, rec.tag, i,
              "tag '" + rec.tag + "' defined twice for lexeme '" + rec.lexeme + "'");
        continue;
      }
      if (rec.weight && *rec.weight <= 0) {
        error(ErrorKind::invalid_weight, rec.lexeme, rec.tag, i,
              "weight " + to_exact_string(*rec.weight) + " on tag '" + rec.tag +
                  "' must be positive");
        continue;
      }
      LexemeTree::Node node;
      node.id = rec.tag;
      node.weight = rec.weight;
      lex.tree.index_.emplace(rec.tag, static_cast<int>(lex.tree.nodes_.size()));
      lex.tree.nodes_.push_back(std::move(node));
      lex.record_of_node.push_back(i);
      lex.parent_token.push_back(rec.parent);
    }
  }

  void link(const Lexeme& lexeme, PendingLexeme& lex) {
    LexemeTree& tree = lex.tree;
    for (std::size_t n = 0; n < tree.nodes_.size(); ++n) {
      const std::optional<TagId>& parent = lex.parent_token[n];
      if (!parent) {
        tree.roots_.push_back(static_cast<int>(n));
        tree.root_ids_.push_back(tree.nodes_[n].id);
        continue;
      }
      auto it = tree.index_.find(*parent);
      if (it == tree.index_.end()) {
        error(ErrorKind::unknown_parent, lexeme, tree.nodes_[n].id, lex.record_of_node[n],
              "parent '" + *parent + "' of tag '" + tree.nodes_[n].id +
                  "' is not defined for lexeme '" + lexeme + "'");
        tree.roots_.push_back(static_cast<int>(n));
        tree.root_ids_.push_back(tree.nodes_[n].id);
        continue;
      }
      tree.nodes_[n].parent = it->second;
      tree.nodes_[it->second].children.push_back(static_cast<int>(n));
    }
  }

  void detect_cycles(const Lexeme& lexeme, PendingLexeme& lex) {
    LexemeTree& tree = lex.tree;
    // 0 = unvisited, 1 = on the current chain, 2 = resolved
    std::vector<int> state(tree.nodes_.size(), 0);
    for (std::size_t start = 0; start < tree.nodes_.size(); ++start) {
      if (state[start] != 0) continue;
      std::vector<int> chain;
      int cur = static_cast<int>(start);
      while (cur >= 0 && state[cur] == 0) {
        state[cur] = 1;
        chain.push_back(cur);
        cur = tree.nodes_[cur].parent;
      }
      if (cur >= 0 && state[cur] == 1) {
        error(ErrorKind::cycle, lexeme, tree.nodes_[cur].id, lex.record_of_node[cur],
              "tag '" + tree.nodes_[cur].id + "' is its own ancestor");
      }
      int base_depth = cur >= 0 && state[cur] == 2 ? tree.nodes_[cur].depth : -1;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        state[*it] = 2;
        tree.nodes_[*it].depth = ++base_depth;
      }
    }
  }

  void check_weights(const Lexeme& lexeme, PendingLexeme& lex) {
    LexemeTree& tree = lex.tree;
    auto check_group = [&](const std::vector<int>& group) {
      if (group.empty()) return;
      bool expect = tree.nodes_[group.front()].weight.has_value();
      for (int member : group) {
        if (tree.nodes_[member].weight.has_value() != expect) {
          error(ErrorKind::mixed_weights, lexeme, tree.nodes_[member].id,
                lex.record_of_node[member],
                "tag '" + tree.nodes_[member].id +
                    "' disagrees with its siblings about carrying a weight");
          return;
        }
      }
    };
    check_group(tree.roots_);
    for (const auto& node : tree.nodes_) check_group(node.children);
  }

  // Edge probabilities: normalized weights when the sibling group carries
  // them, uniform otherwise. Top-level edges stay at 1; nothing ever
  // conditions on the virtual root.
  static void finalize(LexemeTree& tree) {
    for (int r : tree.roots_) tree.nodes_[r].edge_prob = 1;
    for (const auto& node : tree.nodes_) {
      if (node.children.empty()) continue;
      if (tree.nodes_[node.children.front()].weight) {
        Rational sum = 0;
        for (int c : node.children) sum += *tree.nodes_[c].weight;
        for (int c : node.children) {
          tree.nodes_[c].edge_prob = *tree.nodes_[c].weight / sum;
        }
      } else {
        Rational uniform = make_rational(1, static_cast<long>(node.children.size()));
        for (int c : node.children) tree.nodes_[c].edge_prob = uniform;
      }
    }
  }

  const std::vector<InventoryRecord>& records_;
  std::map<Lexeme, PendingLexeme> lexemes_;
  std::vector<BuildError> errors_;
};

BuildResult try_build_inventory(const std::vector<InventoryRecord>& records) {
  return InventoryBuilder(records).run();
}

TagInventory build_inventory(const std::vector<InventoryRecord>& records) {
  BuildResult result = try_build_inventory(records);
  if (!result.inventory) {
    const BuildError& first = result.errors.front();
    throw Error(first.kind, first.message);
  }
  return std::move(*result.inventory);
}

}  // namespace hierscore
