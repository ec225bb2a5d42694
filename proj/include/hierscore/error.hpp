#ifndef HIERSCORE_ERROR_HPP
#define HIERSCORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hierscore {

// One error vocabulary shared by the in-memory operations and the file
// parsers. Parse-time diagnostics wrap these kinds in a ParseError with a
// path and line number; library operations throw Error directly.
enum class ErrorKind {
  invalid_token,       // malformed lexeme / instance-id / tag token
  invalid_tag,         // tag id violates the token rules (whitespace, ':', "-")
  duplicate_tag,       // tag defined or listed twice
  unknown_parent,
  cycle,
  mixed_weights,       // sibling group mixes weighted and unweighted edges
  invalid_weight,      // non-positive or unparseable edge weight
  empty_inventory,
  unknown_lexeme,
  unknown_tag,
  empty_tag_set,
  invalid_distribution,  // masses negative or not summing to 1
  duplicate_instance,
  unknown_instance,    // answer for an instance the key does not contain
  empty_input,
  lexeme_mismatch,
  undefined_kappa,     // chance agreement is 1
  wrong_field_count,
  trailing_whitespace,
  bad_probability,
  mixed_styles,        // plain and probabilistic entries on one answer line
  sum_violation,       // probabilities do not sum to 1
  invalid_argument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hierscore

#endif
