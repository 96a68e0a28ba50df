#pragma once

#include <vector>

#include <Eigen/SVD>

#include "mre/hermitian.hpp"
#include "mre/states.hpp"

namespace mre::testing {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline DensityOperator diag_state(std::initializer_list<double> d) {
  return DensityOperator(diag(d));
}

// Sum of singular values; independent of the eigen-based trace norm.
inline double svd_trace_norm(const ComplexMatrix& a) {
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues().sum();
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// A convex combination with the maximally mixed state keeps the spectrum away from zero.
inline DensityOperator well_conditioned(Eigen::Index n, Rng& rng, double mix = 0.5) {
  const auto r = random_density(n, n, rng);
  return DensityOperator((1.0 - mix) * r.matrix() +
                         mix * ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

inline std::vector<double> random_probabilities(std::size_t m, double floor, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& v : w) total += (v = expo(rng));
  const double free = 1.0 - floor * static_cast<double>(m);
  for (auto& v : w) v = floor + free * v / total;
  return w;
}

}  // namespace mre::testing
