#include "hierscore/scoring.hpp"

#include <algorithm>

namespace hierscore {

namespace {

std::string describe(const Instance& instance) {
  return instance.lexeme + " " + instance.instance_id;
}

void check_output(const LexemeTree& tree, const OutputDistribution& output) {
  Rational sum = 0;
  for (const auto& [tag, m] : output.mass) {
    if (!tree.has_tag(tag)) {
      throw Error(ErrorKind::unknown_tag, "output tag '" + tag + "' is not in the inventory");
    }
    if (m < 0) {
      throw Error(ErrorKind::invalid_distribution, "negative mass on tag '" + tag + "'");
    }
    sum += m;
  }
  if (sum != 1) {
    throw Error(ErrorKind::invalid_distribution,
                "output masses sum to " + to_exact_string(sum) + ", expected 1");
  }
}

void check_key(const LexemeTree& tree, const TagSet& key) {
  if (key.tags.empty()) throw Error(ErrorKind::empty_tag_set, "key tag set is empty");
  for (const TagId& tag : key.tags) {
    if (!tree.has_tag(tag)) {
      throw Error(ErrorKind::unknown_tag, "key tag '" + tag + "' is not in the inventory");
    }
  }
}

}  // namespace

OutputDistribution normalize_output(const std::vector<TagId>& tags) {
  if (tags.empty()) {
    throw Error(ErrorKind::empty_input, "cannot normalize an empty tag list");
  }
  Rational share = make_rational(1, static_cast<long>(tags.size()));
  OutputDistribution out;
  for (const TagId& tag : tags) {
    if (!out.mass.emplace(tag, share).second) {
      throw Error(ErrorKind::duplicate_tag, "tag '" + tag + "' listed twice in output");
    }
  }
  return out;
}

Rational score_instance(const TagInventory& inv, const Lexeme& lexeme,
                        const OutputDistribution& output, const TagSet& key) {
  const LexemeTree& tree = inv.tree(lexeme);
  check_output(tree, output);
  check_key(tree, key);

  // Over an antichain key, leaf sets are disjoint, so summing per-tag credit
  // equals measuring the output's leaf mass on the union of key leaf sets.
  std::set<TagId> canonical = tree.canonicalize_tag_set(key.tags);
  Rational total = 0;
  for (const auto& [tag, m] : output.mass) {
    if (m == 0) continue;
    for (const TagId& correct : canonical) {
      Rational credit = tree.downward_probability(tag, correct);
      if (credit != 0) total += m * credit;
    }
  }
  return total;
}

Rational exact_match_score(const OutputDistribution& output, const TagSet& key) {
  if (key.tags.empty()) throw Error(ErrorKind::empty_tag_set, "key tag set is empty");
  Rational sum = 0;
  for (const auto& [tag, m] : output.mass) {
    if (m < 0) {
      throw Error(ErrorKind::invalid_distribution, "negative mass on tag '" + tag + "'");
    }
    sum += m;
  }
  if (sum != 1) {
    throw Error(ErrorKind::invalid_distribution,
                "output masses sum to " + to_exact_string(sum) + ", expected 1");
  }
  for (const auto& [tag, m] : output.mass) {
    if (m == 1) return key.tags.count(tag) ? 1 : 0;
  }
  return 0;
}

ScoreReport score_run(const TagInventory& inv,
                      const std::vector<std::pair<Instance, TagSet>>& key,
                      const std::vector<std::pair<Instance, OutputDistribution>>& answers,
                      ScoreMode mode) {
  if (key.empty()) throw Error(ErrorKind::empty_input, "key contains no instances");

  std::map<Instance, const TagSet*> key_by_instance;
  for (const auto& [instance, tags] : key) {
    if (!key_by_instance.emplace(instance, &tags).second) {
      throw Error(ErrorKind::duplicate_instance,
                  "instance '" + describe(instance) + "' occurs twice in the key");
    }
  }
  std::map<Instance, const OutputDistribution*> answer_by_instance;
  for (const auto& [instance, output] : answers) {
    if (!answer_by_instance.emplace(instance, &output).second) {
      throw Error(ErrorKind::duplicate_instance,
                  "instance '" + describe(instance) + "' occurs twice in the answers");
    }
    if (!key_by_instance.count(instance)) {
      throw Error(ErrorKind::unknown_instance,
                  "answer for instance '" + describe(instance) + "' which is not in the key");
    }
  }

  ScoreReport report;
  struct Accumulator {
    std::size_t count = 0;
    Rational sum;
  };
  std::map<Lexeme, Accumulator> per_lexeme;
  Accumulator overall;

  for (const auto& [instance, tags] : key_by_instance) {
    const LexemeTree& tree = inv.tree(instance.lexeme);
    check_key(tree, *tags);

    Rational score = 0;
    auto answer = answer_by_instance.find(instance);
    if (answer == answer_by_instance.end()) {
      report.skipped.push_back(instance);
    } else if (mode == ScoreMode::hierarchical) {
      score = score_instance(inv, instance.lexeme, *answer->second, *tags);
    } else {
      check_output(tree, *answer->second);
      score = exact_match_score(*answer->second, *tags);
    }
    report.per_instance.push_back(InstanceScore{instance, score});

    Accumulator& acc = per_lexeme[instance.lexeme];
    ++acc.count;
    acc.sum += score;
    ++overall.count;
    overall.sum += score;
  }

  for (const auto& [lexeme, acc] : per_lexeme) {
    report.per_lexeme.emplace(
        lexeme, LexemeSummary{acc.count, acc.sum / Rational(static_cast<long>(acc.count))});
  }
  report.overall =
      LexemeSummary{overall.count, overall.sum / Rational(static_cast<long>(overall.count))};
  return report;
}

}  // namespace hierscore
