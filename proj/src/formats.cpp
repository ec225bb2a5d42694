#include "hierscore/formats.hpp"

#include <algorithm>
#include <map>

namespace hierscore {

namespace {

constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

// 1e-6, the decimal-sum tolerance.
const Rational& sum_tolerance() {
  static const Rational tol = make_rational(1, 1000000);
  return tol;
}

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

// Physical lines with one trailing '\r' stripped; comment and blank lines
// dropped.
std::vector<Line> data_lines(std::string_view text, std::vector<ParseError>& errors,
                             std::string_view path) {
  if (text.substr(0, kUtf8Bom.size()) == kUtf8Bom) {
    errors.push_back(ParseError{std::string(path), 1, ErrorKind::invalid_token,
                                "file begins with a UTF-8 BOM"});
    text.remove_prefix(kUtf8Bom.size());
  }
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(Line{number, line});
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> fields;
  while (true) {
    std::size_t pos = text.find(sep);
    fields.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return fields;
}

bool ends_with_whitespace(std::string_view line) {
  return !line.empty() && (line.back() == ' ' || line.back() == '\t');
}

class LineErrors {
 public:
  LineErrors(std::vector<ParseError>& sink, std::string_view path) : sink_(sink), path_(path) {}

  void add(std::size_t line, ErrorKind kind, std::string message) {
    sink_.push_back(ParseError{std::string(path_), line, kind, std::move(message)});
  }

 private:
  std::vector<ParseError>& sink_;
  std::string_view path_;
};

// Shared first-two-field handling for key and answer lines. Returns nullopt
// after reporting when the line is unusable.
std::optional<std::pair<std::vector<std::string_view>, Instance>> split_instance_line(
    const Line& line, LineErrors& errors, const TagInventory& inv) {
  std::vector<std::string_view> fields = split(line.text, '\t');
  if (fields.size() != 3) {
    if (fields.size() == 4 && fields.back().empty()) {
      errors.add(line.number, ErrorKind::trailing_whitespace, "line ends with a tab");
    } else {
      errors.add(line.number, ErrorKind::wrong_field_count,
                 "expected 3 tab-separated fields, found " + std::to_string(fields.size()));
    }
    return std::nullopt;
  }
  if (!is_valid_token(fields[0])) {
    errors.add(line.number, ErrorKind::invalid_token,
               "lexeme '" + std::string(fields[0]) + "' is not a valid token");
    return std::nullopt;
  }
  if (!is_valid_token(fields[1])) {
    errors.add(line.number, ErrorKind::invalid_token,
               "instance id '" + std::string(fields[1]) + "' is not a valid token");
    return std::nullopt;
  }
  if (!inv.has_lexeme(std::string(fields[0]))) {
    errors.add(line.number, ErrorKind::unknown_lexeme,
               "lexeme '" + std::string(fields[0]) + "' is not in the inventory");
    return std::nullopt;
  }
  Instance instance{std::string(fields[0]), std::string(fields[1])};
  return std::make_pair(std::move(fields), std::move(instance));
}

// Splits the third field on single spaces. Empty tokens mean doubled,
// leading or trailing separators; report and fail the line.
std::optional<std::vector<std::string_view>> tag_tokens(const Line& line,
                                                        std::string_view field,
                                                        LineErrors& errors) {
  if (field.empty()) {
    errors.add(line.number, ErrorKind::empty_tag_set, "no tags listed");
    return std::nullopt;
  }
  std::vector<std::string_view> tokens = split(field, ' ');
  for (std::string_view token : tokens) {
    if (token.empty()) {
      if (ends_with_whitespace(line.text)) {
        errors.add(line.number, ErrorKind::trailing_whitespace, "line ends with whitespace");
      } else {
        errors.add(line.number, ErrorKind::invalid_token,
                   "tag list is malformed (tags are separated by single spaces)");
      }
      return std::nullopt;
    }
  }
  return tokens;
}

class InstanceTracker {
 public:
  // Returns false (and reports) when the instance was already defined.
  bool claim(const Instance& instance, std::size_t line, LineErrors& errors) {
    auto [it, inserted] = first_line_.emplace(instance, line);
    if (!inserted) {
      errors.add(line, ErrorKind::duplicate_instance,
                 "instance '" + instance.lexeme + " " + instance.instance_id +
                     "' already defined at line " + std::to_string(it->second));
    }
    return inserted;
  }

 private:
  std::map<Instance, std::size_t> first_line_;
};

}  // namespace

std::string to_string(const ParseError& error) {
  return error.path + ":" + std::to_string(error.line) + ": " +
         std::string(to_string(error.kind)) + ": " + error.message;
}

InventoryParse parse_inventory_file(std::string_view text, std::string_view path) {
  InventoryParse result;
  LineErrors errors(result.errors, path);

  std::vector<InventoryRecord> records;
  std::vector<std::size_t> record_line;
  for (const Line& line : data_lines(text, result.errors, path)) {
    std::vector<std::string_view> fields = split(line.text, '\t');
    if (fields.size() < 3 || fields.size() > 4) {
      bool stray_tab = (fields.size() == 5 && fields.back().empty());
      if (stray_tab) {
        errors.add(line.number, ErrorKind::trailing_whitespace, "line ends with a tab");
      } else {
        errors.add(line.number, ErrorKind::wrong_field_count,
                   "expected 3 or 4 tab-separated fields, found " +
                       std::to_string(fields.size()));
      }
      continue;
    }
    if (ends_with_whitespace(line.text)) {
      errors.add(line.number, ErrorKind::trailing_whitespace, "line ends with whitespace");
      continue;
    }
    InventoryRecord record;
    record.lexeme = std::string(fields[0]);
    record.tag = std::string(fields[1]);
    if (fields[2] != "-") record.parent = std::string(fields[2]);
    if (fields.size() == 4) {
      std::optional<Rational> weight = parse_number(fields[3]);
      if (!weight) {
        errors.add(line.number, ErrorKind::invalid_weight,
                   "weight '" + std::string(fields[3]) + "' is not a decimal or fraction");
        continue;
      }
      record.weight = std::move(weight);
    }
    records.push_back(std::move(record));
    record_line.push_back(line.number);
  }

  if (records.empty()) {
    if (result.errors.empty()) {
      errors.add(1, ErrorKind::empty_inventory, "no inventory records in file");
    }
    return result;
  }
  if (!result.errors.empty()) return result;

  BuildResult built = try_build_inventory(records);
  for (const BuildError& be : built.errors) {
    errors.add(record_line[be.record_index], be.kind, be.message);
  }
  if (result.errors.empty()) result.inventory = std::move(built.inventory);
  return result;
}

KeyParse parse_key_file(std::string_view text, std::string_view path,
                        const TagInventory& inv) {
  KeyParse result;
  LineErrors errors(result.errors, path);
  InstanceTracker tracker;

  for (const Line& line : data_lines(text, result.errors, path)) {
    auto head = split_instance_line(line, errors, inv);
    if (!head) continue;
    auto& [fields, instance] = *head;
    auto tokens = tag_tokens(line, fields[2], errors);
    if (!tokens) continue;

    const LexemeTree& tree = inv.tree(instance.lexeme);
    TagSet key;
    bool ok = true;
    for (std::string_view token : *tokens) {
      TagId tag(token);
      if (!tree.has_tag(tag)) {
        errors.add(line.number, ErrorKind::unknown_tag,
                   "tag '" + tag + "' is not in the inventory for lexeme '" +
                       instance.lexeme + "'");
        ok = false;
        continue;
      }
      // repeated disjuncts are redundant, like any ancestor/descendant pair
      key.tags.insert(std::move(tag));
    }
    if (!ok) continue;
    if (!tracker.claim(instance, line.number, errors)) continue;
    result.entries.emplace_back(std::move(instance), std::move(key));
  }
  return result;
}

AnswerParse parse_answer_file(std::string_view text, std::string_view path,
                              const TagInventory& inv, const ParseOptions& options) {
  AnswerParse result;
  LineErrors errors(result.errors, path);
  InstanceTracker tracker;

  for (const Line& line : data_lines(text, result.errors, path)) {
    auto head = split_instance_line(line, errors, inv);
    if (!head) continue;
    auto& [fields, instance] = *head;
    auto tokens = tag_tokens(line, fields[2], errors);
    if (!tokens) continue;

    bool any_prob = false;
    bool any_plain = false;
    for (std::string_view token : *tokens) {
      (token.find(':') != std::string_view::npos ? any_prob : any_plain) = true;
    }
    if (any_prob && any_plain) {
      errors.add(line.number, ErrorKind::mixed_styles,
                 "line mixes plain tags and tag:probability entries");
      continue;
    }

    const LexemeTree& tree = inv.tree(instance.lexeme);
    OutputDistribution output;
    bool ok = true;

    if (any_plain) {
      std::vector<TagId> listed;
      std::set<TagId> seen;
      for (std::string_view token : *tokens) {
        TagId tag(token);
        if (!tree.has_tag(tag)) {
          errors.add(line.number, ErrorKind::unknown_tag,
                     "tag '" + tag + "' is not in the inventory for lexeme '" +
                         instance.lexeme + "'");
          ok = false;
        } else if (!seen.insert(tag).second) {
          errors.add(line.number, ErrorKind::duplicate_tag,
                     "tag '" + tag + "' listed twice");
          ok = false;
        }
        listed.push_back(std::move(tag));
      }
      if (!ok) continue;
      output = normalize_output(listed);
    } else {
      Rational sum = 0;
      bool any_decimal = false;
      for (std::string_view token : *tokens) {
        std::size_t colon = token.find(':');
        TagId tag(token.substr(0, colon));
        std::string_view prob_text = token.substr(colon + 1);
        if (tag.empty()) {
          errors.add(line.number, ErrorKind::invalid_token, "entry has an empty tag");
          ok = false;
          continue;
        }
        if (!tree.has_tag(tag)) {
          errors.add(line.number, ErrorKind::unknown_tag,
                     "tag '" + tag + "' is not in the inventory for lexeme '" +
                         instance.lexeme + "'");
          ok = false;
          continue;
        }
        std::optional<Rational> prob = parse_number(prob_text);
        if (!prob) {
          errors.add(line.number, ErrorKind::bad_probability,
                     "probability '" + std::string(prob_text) + "' is not a decimal or fraction");
          ok = false;
          continue;
        }
        if (*prob < 0) {
          errors.add(line.number, ErrorKind::bad_probability,
                     "probability of tag '" + tag + "' is negative");
          ok = false;
          continue;
        }
        if (prob_text.find('/') == std::string_view::npos) any_decimal = true;
        if (!output.mass.emplace(std::move(tag), *prob).second) {
          errors.add(line.number, ErrorKind::duplicate_tag,
                     "tag '" + std::string(token.substr(0, colon)) + "' listed twice");
          ok = false;
          continue;
        }
        sum += *prob;
      }
      if (!ok) continue;

      if (sum != 1) {
        if (!any_decimal) {
          errors.add(line.number, ErrorKind::sum_violation,
                     "fraction probabilities must sum to exactly 1, got " +
                         to_exact_string(sum));
          continue;
        }
        Rational diff = sum - 1;
        if (diff < 0) diff = -diff;
        if (diff > sum_tolerance()) {
          errors.add(line.number, ErrorKind::sum_violation,
                     "probabilities sum to " + to_exact_string(sum) +
                         ", more than 1e-6 away from 1");
          continue;
        }
        if (!options.renormalize) {
          errors.add(line.number, ErrorKind::sum_violation,
                     "probabilities sum to " + to_exact_string(sum) +
                         " rather than exactly 1 (renormalization is off)");
          continue;
        }
        for (auto& [tag, m] : output.mass) m /= sum;
      }
    }

    if (!tracker.claim(instance, line.number, errors)) continue;
    result.entries.emplace_back(std::move(instance), std::move(output));
  }
  return result;
}

std::string serialize_inventory(const TagInventory& inv) {
  std::string out;
  for (const Lexeme& lexeme : inv.lexemes()) {
    const LexemeTree& tree = inv.tree(lexeme);
    std::vector<TagId> stack(tree.top_level().rbegin(), tree.top_level().rend());
    while (!stack.empty()) {
      TagId tag = std::move(stack.back());
      stack.pop_back();
      std::optional<TagId> parent = tree.parent_of(tag);
      out += lexeme;
      out += '\t';
      out += tag;
      out += '\t';
      out += parent ? *parent : "-";
      if (std::optional<Rational> weight = tree.weight_of(tag)) {
        out += '\t';
        out += to_exact_string(*weight);
      }
      out += '\n';
      std::vector<TagId> children = tree.children_of(tag);
      stack.insert(stack.end(), children.rbegin(), children.rend());
    }
  }
  return out;
}

}  // namespace hierscore
