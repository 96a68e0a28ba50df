#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "mre/config.hpp"

namespace mre {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Predicates. All tolerances are absolute, scaled by max(1, |A|_F).
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTolerances.hermitian);
bool is_psd(const ComplexMatrix& a, double tol = kDefaultTolerances.state);
bool is_projector(const ComplexMatrix& a, double tol = kDefaultTolerances.hermitian);
bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTolerances.hermitian);

/// (A + A*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Spectrum (ascending) and orthonormal eigenvectors of a Hermitian matrix.
/// Degenerate eigenspaces come back in an arbitrary orthonormal basis.
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

/// Throws NonHermitianInput when |A - A*| exceeds the hermiticity tolerance.
EigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                 double hermitian_tol = kDefaultTolerances.hermitian);

/// Threshold below which an eigenvalue of `a` counts as zero.
double clamp_threshold(const EigenDecomposition& eig,
                       double clamp = kDefaultTolerances.eigen_clamp);

enum class ZeroPolicy {
  Strict,      // f is applied to every eigenvalue; a non-finite value is a DomainError
  SupportOnly  // f is applied on the support only; the kernel maps to zero
};

using ScalarFunction = std::function<double(double)>;

/// V f(Λ) V*.
ComplexMatrix matrix_function(const ComplexMatrix& a, const ScalarFunction& f,
                              ZeroPolicy policy = ZeroPolicy::Strict);
ComplexMatrix matrix_function(const EigenDecomposition& eig, const ScalarFunction& f,
                              ZeroPolicy policy = ZeroPolicy::Strict);

ComplexMatrix matrix_log(const ComplexMatrix& a, ZeroPolicy policy = ZeroPolicy::Strict);
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// Projector onto the span of eigenvectors with eigenvalue above the clamp threshold.
ComplexMatrix support_projector(const EigenDecomposition& eig,
                                double clamp = kDefaultTolerances.eigen_clamp);

/// Half the trace norm of A - B.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// |AB - BA|_F.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& a);

}  // namespace mre
