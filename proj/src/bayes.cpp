#include "mre/bayes.hpp"

#include <cmath>
#include <sstream>

#include "mre/collapse.hpp"
#include "mre/errors.hpp"

namespace mre {

namespace {

constexpr double kDiagonalTol = 1e-12;

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights, double sum_tol)
    : w_(std::move(weights)) {
  if (w_.empty()) throw NotNormalized("empty distribution");
  double total = 0.0;
  for (double v : w_) {
    if (!std::isfinite(v) || v < 0.0) throw NotNormalized("weights must be finite and >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > sum_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << total;
    throw NotNormalized(os.str());
  }
}

LikelihoodModel::LikelihoodModel(std::vector<double> likelihood) : l_(std::move(likelihood)) {
  for (double v : l_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("likelihood entries must lie in [0, 1]");
  }
}

void validate_partition(const Partition& cells, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& cell : cells) {
    if (cell.empty()) throw InvalidArgument("partition has an empty cell");
    for (auto x : cell) {
      if (x >= n) throw InvalidArgument("partition index out of range");
      if (seen[x]++) throw InvalidArgument("partition cells overlap");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!seen[x]) throw InvalidArgument("partition does not cover every outcome");
  }
}

DiscreteDistribution bayes_update(const DiscreteDistribution& prior, const LikelihoodModel& lik) {
  if (prior.size() != lik.size()) throw LengthMismatch("prior and likelihood lengths differ");
  double evidence = 0.0;
  for (std::size_t x = 0; x < prior.size(); ++x) evidence += prior[x] * lik.values()[x];
  if (evidence <= kDefaultTolerances.zero_probability) {
    std::ostringstream os;
    os << "p(b) = " << evidence;
    throw ZeroEvidence(os.str());
  }
  std::vector<double> post(prior.size());
  for (std::size_t x = 0; x < prior.size(); ++x) post[x] = prior[x] * lik.values()[x] / evidence;
  return DiscreteDistribution(std::move(post));
}

DiscreteDistribution maxent_update(const DiscreteDistribution& prior, const Partition& cells,
                                   const BlockProbabilities& target) {
  validate_partition(cells, prior.size());
  if (target.size() != cells.size()) throw LengthMismatch("one target per partition cell");
  const double zero = kDefaultTolerances.zero_probability;
  std::vector<double> q(prior.size(), 0.0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    double mass = 0.0;
    for (auto x : cells[i]) mass += prior[x];
    if (mass <= zero) {
      if (target[i] > zero) {
        std::ostringstream os;
        os << "cell " << i << " has target " << target[i] << " but prior mass " << mass;
        throw DegenerateConstraint(os.str());
      }
      continue;
    }
    if (target[i] == 0.0) continue;
    const double scale = target[i] / mass;
    for (auto x : cells[i]) q[x] = scale * prior[x];
  }
  return DiscreteDistribution(std::move(q));
}

DiscreteDistribution bayes_update_by_maxent(const DiscreteDistribution& prior,
                                            const LikelihoodModel& lik) {
  if (prior.size() != lik.size()) throw LengthMismatch("prior and likelihood lengths differ");
  const std::size_t n = prior.size();
  std::vector<double> joint(2 * n);
  Partition cells(2);
  for (std::size_t x = 0; x < n; ++x) {
    joint[x] = prior[x] * lik.values()[x];
    joint[n + x] = prior[x] * (1.0 - lik.values()[x]);
    cells[0].push_back(x);
    cells[1].push_back(n + x);
  }
  double evidence = 0.0;
  for (std::size_t x = 0; x < n; ++x) evidence += joint[x];
  if (evidence <= kDefaultTolerances.zero_probability) {
    std::ostringstream os;
    os << "p(b) = " << evidence;
    throw ZeroEvidence(os.str());
  }
  // The joint is normalized up to rounding; renormalize so the sum check is exact.
  double total = 0.0;
  for (double v : joint) total += v;
  for (double& v : joint) v /= total;

  const auto posterior = maxent_update(DiscreteDistribution(std::move(joint)), cells,
                                       BlockProbabilities({1.0, 0.0}));
  std::vector<double> marginal(n);
  for (std::size_t x = 0; x < n; ++x) marginal[x] = posterior[x] + posterior[n + x];
  return DiscreteDistribution(std::move(marginal));
}

Partition partition_of(const ProjectiveDecomposition& pvm) {
  const Eigen::Index n = pvm.dim();
  Partition cells(pvm.size());
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    const auto& p = pvm.projector(i);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        if (a != b && std::abs(p(a, b)) > kDiagonalTol) {
          throw NotCommuting("projector is not diagonal in the computational basis");
        }
      }
      const double d = p(a, a).real();
      if (std::abs(d - 1.0) <= kDiagonalTol) {
        cells[i].push_back(static_cast<std::size_t>(a));
      } else if (std::abs(d) > kDiagonalTol) {
        throw NotCommuting("projector diagonal is not 0/1");
      }
    }
  }
  return cells;
}

double quantum_classical_consistency(const DensityOperator& rho,
                                     const ProjectiveDecomposition& pvm,
                                     const BlockProbabilities& p) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("quantum_classical_consistency");
  const Eigen::Index n = rho.dim();
  const auto& m = rho.matrix();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a != b && std::abs(m(a, b)) > kDiagonalTol) {
        throw NotCommuting("state is not diagonal in the computational basis");
      }
    }
  }
  const Partition cells = partition_of(pvm);

  std::vector<double> prior(static_cast<std::size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a) prior[static_cast<std::size_t>(a)] = std::max(0.0, m(a, a).real());
  const auto classical = maxent_update(DiscreteDistribution(std::move(prior)), cells, p);

  const auto quantum = jeffrey_collapse(rho, pvm, p);
  ComplexMatrix embedded = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) embedded(a, a) = classical[static_cast<std::size_t>(a)];
  return trace_distance(quantum.post_state.matrix(), embedded);
}

}  // namespace mre
