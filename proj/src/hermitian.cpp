#include "mre/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mre/errors.hpp"

namespace mre {

namespace {

double scale_of(const ComplexMatrix& a) { return std::max(1.0, a.norm()); }

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << who << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionMismatch(os.str());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << who << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale_of(a);
}

bool is_psd(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a)) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * scale_of(a);
}

bool is_projector(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  return (a * a - a).cwiseAbs().maxCoeff() <= tol * scale_of(a);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const auto id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u * u.adjoint() - id).cwiseAbs().maxCoeff() <= tol &&
         (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

ComplexMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a, double hermitian_tol) {
  require_square(a, "hermitian_eig");
  if (!is_hermitian(a, hermitian_tol)) {
    throw NonHermitianInput("matrix deviates from its adjoint by more than tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

double clamp_threshold(const EigenDecomposition& eig, double clamp) {
  const double spectral_norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  return clamp * std::max(1.0, spectral_norm);
}

ComplexMatrix matrix_function(const EigenDecomposition& eig, const ScalarFunction& f,
                              ZeroPolicy policy) {
  const double threshold = clamp_threshold(eig);
  RealVector mapped(eig.dim());
  for (Eigen::Index k = 0; k < eig.dim(); ++k) {
    const double x = eig.eigenvalues(k);
    if (policy == ZeroPolicy::SupportOnly && std::abs(x) <= threshold) {
      mapped(k) = 0.0;
      continue;
    }
    if (policy == ZeroPolicy::SupportOnly && x < 0.0) {
      std::ostringstream os;
      os << "negative eigenvalue " << x << " outside the support of a PSD argument";
      throw DomainError(os.str());
    }
    const double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "function undefined at eigenvalue " << x;
      throw DomainError(os.str());
    }
    mapped(k) = y;
  }
  return eig.eigenvectors * mapped.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix matrix_function(const ComplexMatrix& a, const ScalarFunction& f,
                              ZeroPolicy policy) {
  return matrix_function(hermitian_eig(a), f, policy);
}

ComplexMatrix matrix_log(const ComplexMatrix& a, ZeroPolicy policy) {
  return matrix_function(a, [](double x) { return std::log(x); }, policy);
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  return matrix_function(a, [](double x) { return std::exp(x); });
}

ComplexMatrix support_projector(const EigenDecomposition& eig, double clamp) {
  const double threshold = clamp_threshold(eig, clamp);
  const Eigen::Index n = eig.dim();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.eigenvalues(k) > threshold) {
      p += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
    }
  }
  return p;
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  return 0.5 * trace_norm(a - b);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "commutator_norm");
  return (a * b - b * a).norm();
}

}  // namespace mre
