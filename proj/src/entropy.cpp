#include "mre/entropy.hpp"

#include <cmath>
#include <sstream>

#include "mre/errors.hpp"

namespace mre {

namespace {

void check_distribution(std::span<const double> p, double sum_tol, const char* name) {
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NotNormalized(std::string(name) + " has a negative or non-finite entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > sum_tol) {
    std::ostringstream os;
    os.precision(17);
    os << name << " sums to " << total;
    throw NotNormalized(os.str());
  }
}

}  // namespace

double negentropy(const EigenDecomposition& rho_eig) {
  const double threshold = clamp_threshold(rho_eig);
  double s = 0.0;
  for (Eigen::Index k = 0; k < rho_eig.dim(); ++k) {
    const double x = rho_eig.eigenvalues(k);
    if (x > threshold) s += x * std::log(x);
  }
  return s;
}

ExtendedReal relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                              const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy");
  const auto sigma_eig = sigma.eig();
  const Eigen::Index n = sigma.dim();

  const ComplexMatrix kernel =
      ComplexMatrix::Identity(n, n) - support_projector(sigma_eig, tol.eigen_clamp);
  // (I - P) rho (I - P) is PSD, so its trace is its trace norm.
  const double outside = (kernel * rho.matrix() * kernel).trace().real();
  if (outside >= tol.support) return ExtendedReal::infinity();

  const ComplexMatrix log_sigma =
      matrix_function(sigma_eig, [](double x) { return std::log(x); }, ZeroPolicy::SupportOnly);
  const double cross = (rho.matrix() * log_sigma).trace().real();
  const double d = negentropy(rho.eig()) - cross;

  if (d < -tol.entropy_clamp) {
    std::ostringstream os;
    os << "relative entropy evaluated to " << d << " < 0";
    throw NumericalError(os.str());
  }
  return ExtendedReal(d < 0.0 ? 0.0 : d);
}

double von_neumann_entropy(const DensityOperator& rho) {
  const double s = -negentropy(rho.eig());
  return s < 0.0 ? 0.0 : s;
}

ExtendedReal kl_divergence(std::span<const double> p, std::span<const double> q, double sum_tol) {
  if (p.size() != q.size()) {
    std::ostringstream os;
    os << "lengths " << p.size() << " and " << q.size();
    throw LengthMismatch(os.str());
  }
  check_distribution(p, sum_tol, "p");
  check_distribution(q, sum_tol, "q");
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) return ExtendedReal::infinity();
    d += p[k] * std::log(p[k] / q[k]);
  }
  return ExtendedReal(d < 0.0 ? 0.0 : d);
}

}  // namespace mre
