#include "hierscore/agreement.hpp"

#include <algorithm>
#include <map>

namespace hierscore {

namespace {

Rational inner_product(const LeafDistribution& a, const LeafDistribution& b) {
  if (a.lexeme != b.lexeme) {
    throw Error(ErrorKind::lexeme_mismatch,
                "cannot compare distributions over '" + a.lexeme + "' and '" + b.lexeme + "'");
  }
  const auto& small = a.mass.size() <= b.mass.size() ? a.mass : b.mass;
  const auto& large = a.mass.size() <= b.mass.size() ? b.mass : a.mass;
  Rational sum = 0;
  for (const auto& [leaf, m] : small) {
    auto it = large.find(leaf);
    if (it != large.end()) sum += m * it->second;
  }
  return sum;
}

struct LexemeStats {
  std::size_t n = 0;
  Rational pr_a;
  Rational pr_e;
};

}  // namespace

LeafDistribution annotation_leaf_distribution(const TagInventory& inv,
                                              const Lexeme& lexeme, const TagSet& ann) {
  const LexemeTree& tree = inv.tree(lexeme);
  std::set<TagId> canonical = tree.canonicalize_tag_set(ann.tags);
  Rational share = make_rational(1, static_cast<long>(canonical.size()));
  std::map<TagId, Rational> dist;
  for (const TagId& tag : canonical) dist.emplace(tag, share);
  return LeafDistribution{lexeme, tree.distribute_to_leaves(dist)};
}

Rational pr_agreement(
    const std::vector<std::pair<LeafDistribution, LeafDistribution>>& pairs) {
  if (pairs.empty()) throw Error(ErrorKind::empty_input, "no annotation pairs");
  Rational sum = 0;
  for (const auto& [first, second] : pairs) sum += inner_product(first, second);
  return sum / Rational(static_cast<long>(pairs.size()));
}

Rational pr_chance(const std::vector<LeafDistribution>& all_distributions) {
  if (all_distributions.empty()) throw Error(ErrorKind::empty_input, "no distributions");
  const Lexeme& lexeme = all_distributions.front().lexeme;
  std::map<TagId, Rational> pooled;
  for (const LeafDistribution& dist : all_distributions) {
    if (dist.lexeme != lexeme) {
      throw Error(ErrorKind::lexeme_mismatch,
                  "cannot pool distributions over '" + lexeme + "' and '" + dist.lexeme + "'");
    }
    for (const auto& [leaf, m] : dist.mass) pooled[leaf] += m;
  }
  Rational n(static_cast<long>(all_distributions.size()));
  Rational sum_squares = 0;
  for (const auto& [leaf, total] : pooled) {
    Rational p = total / n;
    sum_squares += p * p;
  }
  return sum_squares;
}

Rational kappa(const Rational& pr_a, const Rational& pr_e) {
  if (pr_a < 0 || pr_a > 1 || pr_e < 0 || pr_e > 1) {
    throw Error(ErrorKind::invalid_argument, "Pr(A) and Pr(E) must lie in [0,1]");
  }
  if (pr_e == 1) {
    throw Error(ErrorKind::undefined_kappa, "chance agreement is 1");
  }
  return (pr_a - pr_e) / (1 - pr_e);
}

namespace {

std::map<Lexeme, LexemeStats> collect_stats(const TagInventory& inv,
                                            const std::vector<AnnotationPair>& pairs) {
  if (pairs.empty()) throw Error(ErrorKind::empty_input, "no annotation pairs");

  std::map<Lexeme, std::vector<std::pair<LeafDistribution, LeafDistribution>>> grouped;
  std::set<Instance> seen;
  for (const AnnotationPair& pair : pairs) {
    if (!seen.insert(pair.instance).second) {
      throw Error(ErrorKind::duplicate_instance,
                  "instance '" + pair.instance.lexeme + " " + pair.instance.instance_id +
                      "' annotated twice");
    }
    grouped[pair.instance.lexeme].emplace_back(
        annotation_leaf_distribution(inv, pair.instance.lexeme, pair.ann1),
        annotation_leaf_distribution(inv, pair.instance.lexeme, pair.ann2));
  }

  std::map<Lexeme, LexemeStats> stats;
  for (const auto& [lexeme, dists] : grouped) {
    std::vector<LeafDistribution> pooled;
    pooled.reserve(dists.size() * 2);
    for (const auto& [first, second] : dists) {
      pooled.push_back(first);
      pooled.push_back(second);
    }
    stats.emplace(lexeme,
                  LexemeStats{dists.size(), pr_agreement(dists), pr_chance(pooled)});
  }
  return stats;
}

KappaReport make_report(std::optional<Lexeme> lexeme, std::size_t n, Rational pr_a,
                        Rational pr_e) {
  KappaReport report;
  report.lexeme = std::move(lexeme);
  report.n_instances = n;
  report.pr_a = pr_a;
  report.pr_e = pr_e;
  if (pr_e != 1) report.kappa = kappa(pr_a, pr_e);
  return report;
}

}  // namespace

std::vector<KappaReport> kappa_run(const TagInventory& inv,
                                   const std::vector<AnnotationPair>& pairs,
                                   KappaScope scope) {
  std::map<Lexeme, LexemeStats> stats = collect_stats(inv, pairs);

  std::vector<KappaReport> reports;
  if (scope == KappaScope::per_lexeme) {
    for (const auto& [lexeme, s] : stats) {
      reports.push_back(make_report(lexeme, s.n, s.pr_a, s.pr_e));
    }
    return reports;
  }

  std::size_t total = 0;
  Rational agreement_sum = 0;
  Rational chance_sum = 0;
  for (const auto& [lexeme, s] : stats) {
    Rational n(static_cast<long>(s.n));
    total += s.n;
    agreement_sum += s.pr_a * n;
    chance_sum += s.pr_e * n;
  }
  Rational n_total(static_cast<long>(total));
  reports.push_back(
      make_report(std::nullopt, total, agreement_sum / n_total, chance_sum / n_total));
  return reports;
}

std::vector<std::pair<Instance, Rational>> per_instance_agreement(
    const TagInventory& inv, const std::vector<AnnotationPair>& pairs) {
  std::map<Instance, Rational> by_instance;
  for (const AnnotationPair& pair : pairs) {
    Rational ip = inner_product(
        annotation_leaf_distribution(inv, pair.instance.lexeme, pair.ann1),
        annotation_leaf_distribution(inv, pair.instance.lexeme, pair.ann2));
    if (!by_instance.emplace(pair.instance, ip).second) {
      throw Error(ErrorKind::duplicate_instance,
                  "instance '" + pair.instance.lexeme + " " + pair.instance.instance_id +
                      "' annotated twice");
    }
  }
  return {by_instance.begin(), by_instance.end()};
}

}  // namespace hierscore
