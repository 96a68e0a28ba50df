#include "mre/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mre/errors.hpp"

namespace mre {

namespace {

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_gaussian(rng);
  }
  return g;
}

void check_block_ranks(Eigen::Index dim, std::span<const Eigen::Index> block_ranks) {
  if (dim <= 0) throw InvalidBlockRanks("dimension must be positive");
  if (block_ranks.empty()) throw InvalidBlockRanks("no blocks given");
  Eigen::Index total = 0;
  for (auto r : block_ranks) {
    if (r <= 0) throw InvalidBlockRanks("block ranks must be positive");
    total += r;
  }
  if (total != dim) {
    std::ostringstream os;
    os << "block ranks sum to " << total << ", expected " << dim;
    throw InvalidBlockRanks(os.str());
  }
}

ComplexMatrix range_basis(const ComplexMatrix& projector, Eigen::Index rank) {
  // Eigenvalues of a projector are 0 and 1; the top `rank` eigenvectors span its range.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(projector));
  return es.eigenvectors().rightCols(rank);
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("density operator must be a non-empty square matrix");
  }
  if (!is_hermitian(m, tol.hermitian)) {
    throw InvalidState("density operator is not Hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr.real() - 1.0) > tol.state || std::abs(tr.imag()) > tol.state) {
    std::ostringstream os;
    os << "trace " << tr.real() << " differs from 1";
    throw InvalidState(os.str());
  }
  matrix_ = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tol.state) {
    std::ostringstream os;
    os << "negative eigenvalue " << lowest;
    throw InvalidState(os.str());
  }
  if (lowest < 0.0) {
    const RealVector clamped = es.eigenvalues().cwiseMax(0.0);
    matrix_ = es.eigenvectors() * clamped.cast<Complex>().asDiagonal() *
              es.eigenvectors().adjoint();
    matrix_ = hermitian_part(matrix_);
  }
}

DensityOperator DensityOperator::normalized(const ComplexMatrix& m) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw InvalidState("cannot normalize a matrix with non-positive trace");
  return DensityOperator(m / tr);
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw DimensionMismatch("dimension must be positive");
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidState("zero vector");
  return DensityOperator(psi * psi.adjoint() / n2);
}

DensityOperator DensityOperator::diagonal(std::span<const double> weights) {
  RealVector w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t k = 0; k < weights.size(); ++k) w(static_cast<Eigen::Index>(k)) = weights[k];
  return DensityOperator(ComplexMatrix(w.cast<Complex>().asDiagonal()));
}

Eigen::Index DensityOperator::rank() const {
  const auto e = eig();
  const double threshold = clamp_threshold(e);
  return (e.eigenvalues.array() > threshold).count();
}

// ---------------------------------------------------------------------------
// ProjectiveDecomposition

ProjectiveDecomposition::ProjectiveDecomposition(std::vector<SpectralBlock> blocks,
                                                 const Tolerances& tol)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidDecomposition("no blocks");
  dim_ = blocks_.front().projector.rows();
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    if (b.projector.rows() != dim_ || b.projector.cols() != dim_) {
      throw DimensionMismatch("projectors must share one square dimension");
    }
    if (!is_projector(b.projector, tol.hermitian)) {
      std::ostringstream os;
      os << "block " << i << " is not a Hermitian idempotent";
      throw InvalidDecomposition(os.str());
    }
    b.projector = hermitian_part(b.projector);
    const auto rank = static_cast<Eigen::Index>(std::llround(b.projector.trace().real()));
    if (rank <= 0) {
      std::ostringstream os;
      os << "block " << i << " has zero rank";
      throw InvalidDecomposition(os.str());
    }
    if (b.rank != 0 && b.rank != rank) {
      std::ostringstream os;
      os << "block " << i << " declares rank " << b.rank << " but its projector has rank " << rank;
      throw InvalidDecomposition(os.str());
    }
    b.rank = rank;
    if (i > 0 && !(b.eigenvalue > blocks_[i - 1].eigenvalue)) {
      throw InvalidDecomposition("block eigenvalues must be strictly increasing");
    }
    total += b.projector;
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if ((blocks_[i].projector * blocks_[j].projector).cwiseAbs().maxCoeff() > tol.hermitian) {
        std::ostringstream os;
        os << "blocks " << i << " and " << j << " are not orthogonal";
        throw InvalidDecomposition(os.str());
      }
    }
  }
  if ((total - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > tol.hermitian) {
    throw InvalidDecomposition("projectors do not sum to the identity");
  }
  bases_.reserve(blocks_.size());
  for (const auto& b : blocks_) bases_.push_back(range_basis(b.projector, b.rank));
}

ProjectiveDecomposition ProjectiveDecomposition::coordinate(
    std::span<const Eigen::Index> block_ranks) {
  const Eigen::Index dim = std::accumulate(block_ranks.begin(), block_ranks.end(), Eigen::Index{0});
  check_block_ranks(dim, block_ranks);
  std::vector<SpectralBlock> blocks;
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < block_ranks.size(); ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < block_ranks[i]; ++k) p(offset + k, offset + k) = 1.0;
    offset += block_ranks[i];
    blocks.push_back({static_cast<double>(i + 1), std::move(p), block_ranks[i]});
  }
  return ProjectiveDecomposition(std::move(blocks));
}

std::vector<Eigen::Index> ProjectiveDecomposition::ranks() const {
  std::vector<Eigen::Index> r;
  r.reserve(blocks_.size());
  for (const auto& b : blocks_) r.push_back(b.rank);
  return r;
}

ComplexMatrix ProjectiveDecomposition::observable() const {
  ComplexMatrix o = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& b : blocks_) o += b.eigenvalue * b.projector;
  return o;
}

ComplexMatrix ProjectiveDecomposition::pinch(const ComplexMatrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) throw DimensionMismatch("pinch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& b : blocks_) out += b.projector * a * b.projector;
  return out;
}

ComplexMatrix ProjectiveDecomposition::compress(const ComplexMatrix& a, std::size_t i) const {
  if (a.rows() != dim_ || a.cols() != dim_) throw DimensionMismatch("compress");
  const auto& b = bases_.at(i);
  return b.adjoint() * a * b;
}

ComplexMatrix ProjectiveDecomposition::assemble(
    const std::vector<ComplexMatrix>& local_blocks) const {
  if (local_blocks.size() != blocks_.size()) throw DimensionMismatch("assemble: block count");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = bases_[i];
    if (local_blocks[i].rows() != b.cols() || local_blocks[i].cols() != b.cols()) {
      throw DimensionMismatch("assemble: block shape");
    }
    out += b * local_blocks[i] * b.adjoint();
  }
  return out;
}

// ---------------------------------------------------------------------------
// BlockProbabilities

BlockProbabilities::BlockProbabilities(std::vector<double> p, double sum_tol) : p_(std::move(p)) {
  if (p_.empty()) throw NotNormalized("empty probability vector");
  double total = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0) throw NotNormalized("probabilities must be finite and >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > sum_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total;
    throw NotNormalized(os.str());
  }
}

// ---------------------------------------------------------------------------

ProjectiveDecomposition spectral_decompose(const ComplexMatrix& observable, double group_tol) {
  const auto eig = hermitian_eig(observable);
  const Eigen::Index n = eig.dim();
  std::vector<SpectralBlock> blocks;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eig.eigenvalues(end) - eig.eigenvalues(end - 1) < group_tol) ++end;
    const Eigen::Index r = end - start;
    const auto cols = eig.eigenvectors.middleCols(start, r);
    blocks.push_back({eig.eigenvalues.segment(start, r).mean(), cols * cols.adjoint(), r});
    start = end;
  }
  return ProjectiveDecomposition(std::move(blocks));
}

DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (dim <= 0) throw InvalidRank("dimension must be positive");
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << dim << "]";
    throw InvalidRank(os.str());
  }
  const ComplexMatrix g = ginibre(dim, rank, rng);
  const ComplexMatrix w = g * g.adjoint();
  return DensityOperator(hermitian_part(w / w.trace().real()));
}

DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

ProjectiveDecomposition random_pvm(Eigen::Index dim, std::span<const Eigen::Index> block_ranks,
                                   Rng& rng) {
  check_block_ranks(dim, block_ranks);
  const ComplexMatrix v = random_unitary(dim, rng);
  std::vector<SpectralBlock> blocks;
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < block_ranks.size(); ++i) {
    const auto cols = v.middleCols(offset, block_ranks[i]);
    blocks.push_back({static_cast<double>(i + 1), cols * cols.adjoint(), block_ranks[i]});
    offset += block_ranks[i];
  }
  return ProjectiveDecomposition(std::move(blocks));
}

ProjectiveDecomposition random_pvm(Eigen::Index dim, std::span<const Eigen::Index> block_ranks,
                                   std::uint64_t seed) {
  Rng rng(seed);
  return random_pvm(dim, block_ranks, rng);
}

ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

std::vector<double> block_trace(const DensityOperator& rho, const ProjectiveDecomposition& pvm) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("block_trace");
  std::vector<double> w;
  w.reserve(pvm.size());
  for (const auto& b : pvm.blocks()) {
    double t = (rho.matrix() * b.projector).trace().real();
    if (t < 0.0 && t >= -kDefaultTolerances.zero_probability) t = 0.0;
    w.push_back(t);
  }
  return w;
}

}  // namespace mre
