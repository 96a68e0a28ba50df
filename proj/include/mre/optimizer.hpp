#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "mre/entropy.hpp"
#include "mre/states.hpp"

namespace mre {

enum class ConstraintKind { Weak, Jeffrey };

/// Block-diagonal states for a PVM (weak), optionally with prescribed block
/// traces (Jeffrey).
class ConstraintSet {
 public:
  static ConstraintSet weak(ProjectiveDecomposition pvm);
  static ConstraintSet jeffrey(ProjectiveDecomposition pvm, BlockProbabilities p);

  ConstraintKind kind() const { return targets_ ? ConstraintKind::Jeffrey : ConstraintKind::Weak; }
  const ProjectiveDecomposition& pvm() const { return pvm_; }
  const std::optional<BlockProbabilities>& targets() const { return targets_; }

  /// Blocks whose trace may be nonzero: all of them for weak, p_i > 0 for Jeffrey.
  bool block_active(std::size_t i) const;
  /// Spectrum may move between blocks only for the weak set.
  bool allows_cross_block_transfer() const { return kind() == ConstraintKind::Weak; }
  /// True when the set has a single element (Jeffrey with every active block of rank 1).
  bool is_singleton() const;

  /// max_i of |[P_i, sigma]|_F and, for Jeffrey, |tr(sigma P_i) - p_i|.
  double feasibility_residual(const DensityOperator& sigma) const;
  bool is_feasible(const DensityOperator& sigma,
                   double feas_tol = kDefaultTolerances.feasibility) const;

 private:
  ConstraintSet(ProjectiveDecomposition pvm, std::optional<BlockProbabilities> targets);

  ProjectiveDecomposition pvm_;
  std::optional<BlockProbabilities> targets_;
};

/// Flow sigma -> exp(tL) sigma exp(-tL) with L anti-Hermitian and
/// L P_j = delta_ij L.
struct BlockUnitary {
  std::size_t block;
  ComplexMatrix generator;  // dim x dim

  /// Embeds an r_i x r_i anti-Hermitian generator given in the block's basis.
  static BlockUnitary from_local(const ProjectiveDecomposition& pvm, std::size_t block,
                                 const ComplexMatrix& local_generator);
};

/// Moves spectral weight from eigenvalue `from` to eigenvalue `to` of sigma,
/// indices into the block-adapted eigenbasis (see BlockSpectrum).
struct SpectrumTransfer {
  std::size_t from;
  std::size_t to;
  bool within_block;
};

using TangentDirection = std::variant<BlockUnitary, SpectrumTransfer>;

/// Eigendecomposition of a block-diagonal state computed block by block.
/// Global eigenvalue index runs over blocks in order, ascending inside each block.
struct BlockSpectrum {
  struct Block {
    RealVector eigenvalues;       // ascending
    ComplexMatrix local_vectors;  // r_i x r_i
    ComplexMatrix vectors;        // dim x r_i, = basis(i) * local_vectors
    std::size_t offset;           // global index of eigenvalue 0 of this block
  };
  std::vector<Block> blocks;
  double clamp;  // eigenvalues <= clamp count as zero

  BlockSpectrum(const DensityOperator& sigma, const ProjectiveDecomposition& pvm);

  std::size_t size() const;
  /// (block, local index) of a global eigenvalue index.
  std::pair<std::size_t, Eigen::Index> locate(std::size_t global) const;
  double eigenvalue(std::size_t global) const;
};

/// Gradient G of sigma -> -tr(rho ln sigma) at full-rank sigma:
/// tr(G H) is the derivative along Hermitian H. Built in sigma's eigenbasis
/// from first divided differences of ln. Throws SingularState for
/// rank-deficient sigma.
ComplexMatrix objective_gradient(const DensityOperator& rho, const DensityOperator& sigma);

/// (ln x - ln y) / (x - y), with 1/x on the diagonal.
double log_divided_difference(double x, double y);

/// Caches the block spectra of sigma and the compressed rho needed to
/// evaluate one-sided derivatives of D(rho, .) at sigma.
class FirstOrderProbe {
 public:
  /// Requires sigma block-diagonal for `pvm` and D(rho, sigma) finite.
  FirstOrderProbe(const DensityOperator& rho, const DensityOperator& sigma,
                  const ProjectiveDecomposition& pvm, const Tolerances& tol = kDefaultTolerances);

  /// +infinity when a rotation moves support of rho into the kernel of sigma.
  /// Throws UndefinedDirection for a spectrum transfer out of a zero eigenvalue.
  double derivative(const TangentDirection& dir) const;

  const BlockSpectrum& spectrum() const { return spectrum_; }
  const ProjectiveDecomposition& pvm() const { return pvm_; }

 private:
  double rotation_derivative(const BlockUnitary& dir) const;
  double transfer_derivative(const SpectrumTransfer& dir) const;
  /// rho compressed to block i, expressed in sigma's eigenbasis there.
  const ComplexMatrix& rho_local(std::size_t block) const { return rho_local_[block]; }

  ProjectiveDecomposition pvm_;
  BlockSpectrum spectrum_;
  std::vector<ComplexMatrix> rho_local_;
  double support_tol_;
};

/// One-sided derivative of D(rho, .) at sigma along `dir`.
double directional_derivative(const DensityOperator& rho, const DensityOperator& sigma,
                              const ProjectiveDecomposition& pvm, const TangentDirection& dir);

struct Witness {
  TangentDirection direction;
  double derivative;
};

struct FirstOrderReport {
  double min_derivative = 0.0;  // 0 when no admissible direction exists
  std::size_t evaluated = 0;
  std::vector<Witness> witnesses;  // derivative < -opt_tol
};

/// Samples n_directions tangent directions at sigma (block rotations with
/// normalized anti-Hermitian Gaussian generators, and spectrum transfers
/// uniform over admissible index pairs, inward at zero eigenvalues). Each
/// two-sided direction is evaluated in both orientations.
FirstOrderReport check_first_order(const DensityOperator& rho, const DensityOperator& sigma,
                                   const ConstraintSet& cset, std::size_t n_directions,
                                   std::uint64_t seed,
                                   double opt_tol = kDefaultTolerances.optimality);

/// Minimum over every spectrum transfer into a zero eigenvalue of sigma
/// (from an admissible nonzero one). nullopt when sigma has no zero eigenvalue
/// in an active block.
std::optional<double> inward_boundary_derivative(const DensityOperator& rho,
                                                 const DensityOperator& sigma,
                                                 const ConstraintSet& cset);

struct MinimizeOptions {
  int max_iter = 5000;
  double initial_step = 0.5;
  double backoff = 0.5;         // step multiplier after an objective increase
  double min_step = 1e-12;      // below this the run stops as stalled
  double opt_tol = kDefaultTolerances.optimality;
  double feas_tol = kDefaultTolerances.feasibility;
  double step_tol = 1e-14;      // trace-norm change of an accepted step
  std::uint64_t seed = 0;       // for the certificate directions
  std::size_t certificate_directions = 32;
  bool record_history = false;
};

struct MinimizationResult {
  DensityOperator minimizer;
  ExtendedReal objective;  // D(rho, minimizer), nats
  int iterations = 0;
  bool converged = false;
  /// Bound on objective - min from convexity: tr(G sigma) - min_{tau feasible} tr(G tau).
  double stationarity_gap = 0.0;
  std::optional<double> min_directional_derivative;
  double feasibility_residual = 0.0;
  std::optional<double> trace_distance_to_analytic;
  std::optional<double> boundary_inward_derivative;
  std::vector<double> objective_history;  // accepted iterates, when recorded
};

/// Minimizes sigma -> D(rho, sigma) over the constraint set by blockwise
/// entropic mirror descent, starting from the blockwise-uniform state.
/// Never returns the analytic collapse directly. NotConverged is signalled
/// by converged == false on the best iterate.
MinimizationResult minimize(const DensityOperator& rho, const ConstraintSet& cset,
                            const MinimizeOptions& opts = {});

/// The closed-form information projection for the constraint set
/// (weak or Jeffrey collapse).
DensityOperator analytic_projection(const DensityOperator& rho, const ConstraintSet& cset);

/// Runs minimize on a rank-deficient rho and compares with the closed form.
/// Throws InvalidArgument if rho has full rank.
MinimizationResult boundary_case_check(const DensityOperator& rho, const ConstraintSet& cset,
                                       const MinimizeOptions& opts = {});

/// A random full-rank element of the constraint set (restricted to active blocks).
DensityOperator random_feasible_state(const ConstraintSet& cset, Rng& rng);

}  // namespace mre
