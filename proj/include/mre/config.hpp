#pragma once

namespace mre {

/// Shared numerical thresholds. Every module reads its defaults from here.
struct Tolerances {
  double hermitian = 1e-10;       // |A - A*| entrywise, relative to max(1, |A|_F)
  double eigen_clamp = 1e-12;     // eigenvalues below clamp * max(1, |A|_2) count as zero
  double group = 1e-8;            // eigenvalue merging in spectral decompositions
  double state = 1e-10;           // trace / positivity slack for density operators
  double probability_sum = 1e-12; // normalization of probability vectors
  double zero_probability = 1e-12;
  double support = 1e-10;         // trace norm of rho outside supp(sigma)
  double entropy_clamp = 1e-10;   // D in [-clamp, 0) is reported as 0
  double feasibility = 1e-10;
  double optimality = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace mre
