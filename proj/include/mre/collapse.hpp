#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mre/states.hpp"

namespace mre {

enum class CollapseRule { Weak, Strong, Jeffrey };

std::string_view to_string(CollapseRule rule);

struct CollapseOutcome {
  DensityOperator post_state;
  std::vector<double> outcome_probabilities;  // Born weights tr(rho P_i)
  CollapseRule rule;
  std::optional<std::size_t> selected_block;  // set for the strong rule
};

/// rho -> sum_i P_i rho P_i.
CollapseOutcome weak_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm);

/// rho -> P_k rho P_k / tr(rho P_k), with k a zero-based block index.
/// Throws ZeroProbabilityOutcome when tr(rho P_k) <= 1e-12.
CollapseOutcome strong_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm,
                                std::size_t k);

/// rho -> sum_i p_i P_i rho P_i / tr(rho P_i).
///
/// Blocks with p_i <= 1e-12 and vanishing Born weight contribute nothing.
/// A block with p_i > 1e-12 but tr(rho P_i) <= 1e-12 has no unique
/// information projection and throws DegenerateConstraint.
CollapseOutcome jeffrey_collapse(const DensityOperator& rho, const ProjectiveDecomposition& pvm,
                                 const BlockProbabilities& p);

struct LimitPoint {
  double p_selected;
  double trace_distance;
};

/// Walks the Jeffrey update toward the strong update for block k: at each
/// p1 of the (strictly ascending, within (0, 1]) sequence, block k gets p1
/// and the rest 1 - p1 is spread over the other blocks proportionally to
/// their Born weights. Records the trace distance to strong_collapse.
std::vector<LimitPoint> strong_limit_trace(const DensityOperator& rho,
                                           const ProjectiveDecomposition& pvm, std::size_t k,
                                           std::span<const double> p1_sequence);

/// The block probabilities used by strong_limit_trace at one step.
BlockProbabilities limit_probabilities(std::span<const double> born_weights, std::size_t k,
                                       double p1);

}  // namespace mre
