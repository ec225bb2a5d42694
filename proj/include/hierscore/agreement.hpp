#ifndef HIERSCORE_AGREEMENT_HPP
#define HIERSCORE_AGREEMENT_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hierscore/scoring.hpp"
#include "hierscore/tagtree.hpp"

namespace hierscore {

// Two annotators' gold annotations for one instance.
struct AnnotationPair {
  Instance instance;
  TagSet ann1;
  TagSet ann2;
};

// Chance-corrected agreement for one scope (a lexeme, or the pooled corpus).
// kappa is absent when chance agreement is 1 (single usable leaf), where the
// coefficient is undefined.
struct KappaReport {
  std::optional<Lexeme> lexeme;  // nullopt = pooled over all lexemes
  std::size_t n_instances = 0;
  Rational pr_a;
  Rational pr_e;
  std::optional<Rational> kappa;
};

enum class KappaScope { per_lexeme, pooled };

// Distributes a disjunctive annotation over the leaves: the canonical
// antichain's C disjuncts get mass 1/C each, then mass flows down the tree.
LeafDistribution annotation_leaf_distribution(const TagInventory& inv,
                                              const Lexeme& lexeme, const TagSet& ann);

// Observed agreement: the mean, over instances, of the inner product of the
// two annotators' leaf distributions.
Rational pr_agreement(
    const std::vector<std::pair<LeafDistribution, LeafDistribution>>& pairs);

// Chance agreement: sum of squared leaf probabilities, with each leaf's
// probability estimated as its mean mass over all given distributions
// (both annotators pooled with equal weight).
Rational pr_chance(const std::vector<LeafDistribution>& all_distributions);

// (Pr(A) - Pr(E)) / (1 - Pr(E)); throws undefined_kappa when pr_e == 1.
Rational kappa(const Rational& pr_a, const Rational& pr_e);

// Per-lexeme mode: one report per lexeme over that lexeme's instances.
// Pooled mode: one report with Pr(A) averaged over all instances and Pr(E)
// the instance-count-weighted mean of per-lexeme Pr(E) values (leaf spaces
// of distinct lexemes are disjoint).
std::vector<KappaReport> kappa_run(const TagInventory& inv,
                                   const std::vector<AnnotationPair>& pairs,
                                   KappaScope scope);

// Per-instance inner products behind Pr(A), sorted by instance. Identical
// non-point annotations agree with less than probability 1; this makes that
// visible per instance.
std::vector<std::pair<Instance, Rational>> per_instance_agreement(
    const TagInventory& inv, const std::vector<AnnotationPair>& pairs);

}  // namespace hierscore

#endif
