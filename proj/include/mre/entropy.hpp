#pragma once

#include <limits>
#include <span>

#include "mre/states.hpp"

namespace mre {

/// A nonnegative quantity in nats that may be +infinity. Infinity is an
/// explicit state, never the result of overflow.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double v) : value_(v) {}
  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Finite value; +inf as a double when infinite.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }
  /// The sign-flipped view S = -D.
  constexpr double negated() const { return -value(); }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    return a.value() < b.value();
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Umegaki relative entropy D(rho, sigma) = tr(rho ln rho - rho ln sigma).
///
/// Returns +infinity when rho has trace-norm weight above the support
/// tolerance outside supp(sigma). Finite results in [-1e-10, 0) are reported
/// as 0; anything more negative throws NumericalError.
ExtendedReal relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                              const Tolerances& tol = kDefaultTolerances);

/// -sum k ln k over the nonzero spectrum, in nats.
double von_neumann_entropy(const DensityOperator& rho);

/// tr(rho ln rho) on the support of rho.
double negentropy(const EigenDecomposition& rho_eig);

/// sum_k p_k ln(p_k / q_k) with 0 ln 0 = 0; +infinity when q vanishes where p does not.
ExtendedReal kl_divergence(std::span<const double> p, std::span<const double> q,
                           double sum_tol = kDefaultTolerances.probability_sum);

}  // namespace mre
