#pragma once

#include <span>
#include <vector>

#include "mre/states.hpp"

namespace mre {

/// Nonnegative weights summing to one.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> weights,
                                double sum_tol = kDefaultTolerances.probability_sum);

  const std::vector<double>& weights() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t x) const { return w_.at(x); }

 private:
  std::vector<double> w_;
};

/// p(b | x) for one fixed event b; every entry in [0, 1].
class LikelihoodModel {
 public:
  explicit LikelihoodModel(std::vector<double> likelihood);

  const std::vector<double>& values() const { return l_; }
  std::size_t size() const { return l_.size(); }

 private:
  std::vector<double> l_;
};

/// Disjoint index sets covering 0..n-1.
using Partition = std::vector<std::vector<std::size_t>>;

/// Throws InvalidArgument unless `cells` is a partition of 0..n-1 into non-empty cells.
void validate_partition(const Partition& cells, std::size_t n);

/// p(x) -> p(x) p(b|x) / p(b). Throws ZeroEvidence when p(b) <= 1e-12.
DiscreteDistribution bayes_update(const DiscreteDistribution& prior, const LikelihoodModel& lik);

/// argmin_q KL(prior, q) subject to q(cell_i) = target_i: the prior rescaled
/// cell by cell (classical Jeffrey rule). Throws DegenerateConstraint when a
/// cell with positive target carries no prior mass.
DiscreteDistribution maxent_update(const DiscreteDistribution& prior, const Partition& cells,
                                   const BlockProbabilities& target);

/// Bayes conditioning recovered as a constrained KL minimization on the
/// joint space X x {b, not b}: prior p(x) p(b|x) on (x, b) and
/// p(x) (1 - p(b|x)) on (x, not b), constrained to put all mass on b,
/// then marginalized to X.
DiscreteDistribution bayes_update_by_maxent(const DiscreteDistribution& prior,
                                            const LikelihoodModel& lik);

/// Trace distance between the quantum Jeffrey update of a diagonal rho under
/// a coordinate PVM and the diagonal embedding of maxent_update on diag(rho).
/// Throws NotCommuting unless rho and every projector are diagonal.
double quantum_classical_consistency(const DensityOperator& rho,
                                     const ProjectiveDecomposition& pvm,
                                     const BlockProbabilities& p);

/// The cells of a PVM whose projectors are diagonal 0/1 matrices.
/// Throws NotCommuting otherwise.
Partition partition_of(const ProjectiveDecomposition& pvm);

}  // namespace mre
