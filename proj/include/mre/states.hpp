#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mre/config.hpp"
#include "mre/hermitian.hpp"

namespace mre {

using Rng = std::mt19937_64;

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// Construction validates the invariants; eigenvalues in [-state_tol, 0) are
/// clamped to zero and the stored matrix is exactly Hermitian.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m,
                           const Tolerances& tol = kDefaultTolerances);

  /// Divides a nonzero PSD matrix by its trace.
  static DensityOperator normalized(const ComplexMatrix& m);
  static DensityOperator maximally_mixed(Eigen::Index dim);
  /// |psi><psi| / <psi|psi>.
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator diagonal(std::span<const double> weights);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  EigenDecomposition eig() const { return hermitian_eig(matrix_); }
  /// Number of eigenvalues above the clamp threshold.
  Eigen::Index rank() const;

 private:
  ComplexMatrix matrix_;
};

/// One spectral block (lambda_i, P_i) of an observable.
struct SpectralBlock {
  double eigenvalue = 0.0;
  ComplexMatrix projector;
  Eigen::Index rank = 0;
};

/// Ordered family of orthogonal projectors summing to the identity, with
/// strictly increasing eigenvalues. An orthonormal basis of each range is
/// kept alongside so block-local computations can work in r_i x r_i.
class ProjectiveDecomposition {
 public:
  /// Validates idempotence, orthogonality, completeness and ordering.
  explicit ProjectiveDecomposition(std::vector<SpectralBlock> blocks,
                                   const Tolerances& tol = kDefaultTolerances);

  /// Computational-basis blocks: block i covers the index range given by
  /// consecutive entries of `block_ranks`, with eigenvalue i + 1.
  static ProjectiveDecomposition coordinate(std::span<const Eigen::Index> block_ranks);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<SpectralBlock>& blocks() const { return blocks_; }
  const SpectralBlock& block(std::size_t i) const { return blocks_.at(i); }
  const ComplexMatrix& projector(std::size_t i) const { return blocks_.at(i).projector; }
  /// dim x r_i matrix with orthonormal columns spanning range(P_i).
  const ComplexMatrix& basis(std::size_t i) const { return bases_.at(i); }
  std::vector<Eigen::Index> ranks() const;

  /// sum_i lambda_i P_i.
  ComplexMatrix observable() const;
  /// sum_i P_i A P_i.
  ComplexMatrix pinch(const ComplexMatrix& a) const;
  /// B_i* A B_i, the i-th diagonal block in local coordinates.
  ComplexMatrix compress(const ComplexMatrix& a, std::size_t i) const;
  /// sum_i B_i A_i B_i*.
  ComplexMatrix assemble(const std::vector<ComplexMatrix>& local_blocks) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<SpectralBlock> blocks_;
  std::vector<ComplexMatrix> bases_;
};

/// Probability vector aligned with the blocks of a decomposition.
class BlockProbabilities {
 public:
  explicit BlockProbabilities(std::vector<double> p,
                              double sum_tol = kDefaultTolerances.probability_sum);

  const std::vector<double>& values() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_.at(i); }

 private:
  std::vector<double> p_;
};

/// Groups eigenvalues whose consecutive gaps are below `group_tol`
/// (transitive closure on the sorted spectrum). Each block's eigenvalue is
/// the mean of its cluster.
ProjectiveDecomposition spectral_decompose(const ComplexMatrix& observable,
                                           double group_tol = kDefaultTolerances.group);

/// G G* / tr(G G*) with G a dim x rank complex Ginibre matrix.
DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng);
DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

/// Haar unitary from the QR decomposition of a complex Ginibre matrix, with
/// the phases of diag(R) absorbed into Q.
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Projectors onto consecutive column groups of a Haar unitary; lambda_i = i + 1.
ProjectiveDecomposition random_pvm(Eigen::Index dim, std::span<const Eigen::Index> block_ranks,
                                   Rng& rng);
ProjectiveDecomposition random_pvm(Eigen::Index dim, std::span<const Eigen::Index> block_ranks,
                                   std::uint64_t seed);

/// Random Hermitian matrix with i.i.d. complex Gaussian entries (GUE up to scale).
ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng);

/// Born weights tr(rho P_i). Values within 1e-12 below zero are clamped.
std::vector<double> block_trace(const DensityOperator& rho, const ProjectiveDecomposition& pvm);

}  // namespace mre
