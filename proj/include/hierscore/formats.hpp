#ifndef HIERSCORE_FORMATS_HPP
#define HIERSCORE_FORMATS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hierscore/scoring.hpp"
#include "hierscore/tagtree.hpp"

namespace hierscore {

// All three formats are UTF-8 (no BOM), line oriented, tab separated.
// '#' lines and blank lines are ignored. LF and CRLF both accepted;
// trailing whitespace is an error, not silently stripped.
//
//   inventory:  lexeme<TAB>tag<TAB>parent[<TAB>weight]   parent "-" = top level
//   key:        lexeme<TAB>instance<TAB>tag( tag)*       disjunctive tags
//   answers:    lexeme<TAB>instance<TAB>tag[:prob]( tag[:prob])*
//
// Probabilities and weights are decimals or exact fractions "p/q".

struct ParseError {
  std::string path;
  std::size_t line = 0;  // 1-based physical line
  ErrorKind kind = ErrorKind::invalid_token;
  std::string message;
};

std::string to_string(const ParseError& error);

struct ParseOptions {
  // Rescale answer lines whose decimal probabilities sum within 1e-6 of 1 to
  // an exact sum of 1. Off by default: inexact sums are then an error.
  // Fraction-only lines must sum to exactly 1 either way.
  bool renormalize = false;
};

struct InventoryParse {
  std::optional<TagInventory> inventory;  // set iff errors is empty
  std::vector<ParseError> errors;
};

struct KeyParse {
  std::vector<std::pair<Instance, TagSet>> entries;
  std::vector<ParseError> errors;
};

struct AnswerParse {
  std::vector<std::pair<Instance, OutputDistribution>> entries;
  std::vector<ParseError> errors;
};

InventoryParse parse_inventory_file(std::string_view text, std::string_view path);

KeyParse parse_key_file(std::string_view text, std::string_view path,
                        const TagInventory& inv);

AnswerParse parse_answer_file(std::string_view text, std::string_view path,
                              const TagInventory& inv, const ParseOptions& options = {});

// Inventory as inventory-file text: lexemes sorted, trees in preorder so that
// re-parsing reproduces the structure, child order and weights exactly.
std::string serialize_inventory(const TagInventory& inv);

}  // namespace hierscore

#endif
