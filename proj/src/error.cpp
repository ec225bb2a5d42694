#include "hierscore/error.hpp"

namespace hierscore {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_token: return "invalid-token";
    case ErrorKind::invalid_tag: return "invalid-tag";
    case ErrorKind::duplicate_tag: return "duplicate-tag";
    case ErrorKind::unknown_parent: return "unknown-parent";
    case ErrorKind::cycle: return "cycle";
    case ErrorKind::mixed_weights: return "mixed-weights";
    case ErrorKind::invalid_weight: return "invalid-weight";
    case ErrorKind::empty_inventory: return "empty-inventory";
    case ErrorKind::unknown_lexeme: return "unknown-lexeme";
    case ErrorKind::unknown_tag: return "unknown-tag";
    case ErrorKind::empty_tag_set: return "empty-tag-set";
    case ErrorKind::invalid_distribution: return "invalid-distribution";
    case ErrorKind::duplicate_instance: return "duplicate-instance";
    case ErrorKind::unknown_instance: return "unknown-instance";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::lexeme_mismatch: return "lexeme-mismatch";
    case ErrorKind::undefined_kappa: return "undefined-kappa";
    case ErrorKind::wrong_field_count: return "wrong-field-count";
    case ErrorKind::trailing_whitespace: return "trailing-whitespace";
    case ErrorKind::bad_probability: return "bad-probability";
    case ErrorKind::mixed_styles: return "mixed-styles";
    case ErrorKind::sum_violation: return "sum-violation";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown-error";
}

}  // namespace hierscore
