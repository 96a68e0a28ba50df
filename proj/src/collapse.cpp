#include "mre/collapse.hpp"

#include <sstream>

#include "mre/errors.hpp"

namespace mre {

std::string_view to_string(CollapseRule rule) {
  switch (rule) {
    case CollapseRule::Weak: return "weak";
    case CollapseRule::Strong: return "strong";
    case CollapseRule::Jeffrey: return "jeffrey";
  }
  return "unknown";
}

CollapseOutcome weak_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("weak_collapse");
  return {DensityOperator(pvm.pinch(rho.matrix())), block_trace(rho, pvm), CollapseRule::Weak,
          std::nullopt};
}

CollapseOutcome strong_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm,
                                std::size_t k) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("strong_collapse");
  if (k >= pvm.size()) {
    std::ostringstream os;
    os << "block index " << k << " out of range for " << pvm.size() << " blocks";
    throw InvalidArgument(os.str());
  }
  auto born = block_trace(rho, pvm);
  if (born[k] <= kDefaultTolerances.zero_probability) {
    std::ostringstream os;
    os << "outcome " << k << " has probability " << born[k];
    throw ZeroProbabilityOutcome(os.str());
  }
  const auto& p = pvm.projector(k);
  const ComplexMatrix post = p * rho.matrix() * p / born[k];
  return {DensityOperator(post), std::move(born), CollapseRule::Strong, k};
}

CollapseOutcome jeffrey_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm,
                                 const BlockProbabilities& p) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("jeffrey_collapse");
  if (p.size() != pvm.size()) {
    std::ostringstream os;
    os << p.size() << " probabilities for " << pvm.size() << " blocks";
    throw LengthMismatch(os.str());
  }
  auto born = block_trace(rho, pvm);
  const double zero = kDefaultTolerances.zero_probability;
  const Eigen::Index n = rho.dim();
  ComplexMatrix post = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    if (born[i] <= zero) {
      if (p[i] > zero) {
        std::ostringstream os;
        os << "block " << i << " has target probability " << p[i]
           << " but prior weight " << born[i];
        throw DegenerateConstraint(os.str());
      }
      continue;
    }
    if (p[i] == 0.0) continue;
    const auto& proj = pvm.projector(i);
    post += (p[i] / born[i]) * (proj * rho.matrix() * proj);
  }
  return {DensityOperator(post), std::move(born), CollapseRule::Jeffrey, std::nullopt};
}

BlockProbabilities limit_probabilities(std::span<const double> born_weights, std::size_t k,
                                       double p1) {
  if (k >= born_weights.size()) throw InvalidArgument("block index out of range");
  if (!(p1 > 0.0 && p1 <= 1.0)) throw InvalidArgument("p1 must lie in (0, 1]");
  double rest = 0.0;
  for (std::size_t i = 0; i < born_weights.size(); ++i) {
    if (i != k) rest += born_weights[i];
  }
  std::vector<double> p(born_weights.size(), 0.0);
  p[k] = p1;
  const double residual = 1.0 - p1;
  if (residual > 0.0) {
    if (rest <= kDefaultTolerances.zero_probability) {
      throw DegenerateConstraint("no other block carries prior weight to absorb 1 - p1");
    }
    for (std::size_t i = 0; i < born_weights.size(); ++i) {
      if (i != k) p[i] = residual * born_weights[i] / rest;
    }
  }
  return BlockProbabilities(std::move(p));
}

std::vector<LimitPoint> strong_limit_trace(const DensityOperator& rho,
                                           const ProjectiveDecomposition& pvm, std::size_t k,
                                           std::span<const double> p1_sequence) {
  if (p1_sequence.empty()) throw InvalidArgument("empty p1 sequence");
  for (std::size_t j = 0; j < p1_sequence.size(); ++j) {
    const double v = p1_sequence[j];
    if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument("p1 values must lie in (0, 1]");
    if (j > 0 && !(v > p1_sequence[j - 1])) {
      throw InvalidArgument("p1 sequence must be strictly ascending");
    }
  }
  const auto target = strong_collapse(rho, pvm, k);
  const auto& born = target.outcome_probabilities;
  std::vector<LimitPoint> trace;
  trace.reserve(p1_sequence.size());
  for (double p1 : p1_sequence) {
    const auto jeffrey = jeffrey_collapse(rho, pvm, limit_probabilities(born, k, p1));
    trace.push_back(
        {p1, trace_distance(jeffrey.post_state.matrix(), target.post_state.matrix())});
  }
  return trace;
}

}  // namespace mre
