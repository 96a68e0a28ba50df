#include "mre/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mre/collapse.hpp"
#include "mre/errors.hpp"

namespace mre {

namespace {

constexpr double kEigenFloor = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix local_density(const RealVector& s, const ComplexMatrix& vecs) {
  return vecs * s.cast<Complex>().asDiagonal() * vecs.adjoint();
}

ComplexMatrix divided_difference_gradient(const ComplexMatrix& rho_tilde, const RealVector& s) {
  const Eigen::Index r = s.size();
  ComplexMatrix g(r, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index l = 0; l < r; ++l) {
      g(k, l) = -rho_tilde(k, l) * log_divided_difference(s(k), s(l));
    }
  }
  return g;
}

}  // namespace

double log_divided_difference(double x, double y) {
  if (x == y) return 1.0 / x;
  const double d = x - y;
  if (std::abs(d) < 0.5 * std::max(x, y)) return std::log1p(d / y) / d;
  return (std::log(x) - std::log(y)) / d;
}

// ---------------------------------------------------------------------------
// ConstraintSet

ConstraintSet::ConstraintSet(ProjectiveDecomposition pvm, std::optional<BlockProbabilities> targets)
    : pvm_(std::move(pvm)), targets_(std::move(targets)) {
  if (targets_ && targets_->size() != pvm_.size()) {
    std::ostringstream os;
    os << targets_->size() << " block probabilities for " << pvm_.size() << " blocks";
    throw LengthMismatch(os.str());
  }
}

ConstraintSet ConstraintSet::weak(ProjectiveDecomposition pvm) {
  return ConstraintSet(std::move(pvm), std::nullopt);
}

ConstraintSet ConstraintSet::jeffrey(ProjectiveDecomposition pvm, BlockProbabilities p) {
  return ConstraintSet(std::move(pvm), std::move(p));
}

bool ConstraintSet::block_active(std::size_t i) const {
  return !targets_ || (*targets_)[i] > 0.0;
}

bool ConstraintSet::is_singleton() const {
  if (!targets_) return pvm_.size() == 1 && pvm_.block(0).rank == 1;
  for (std::size_t i = 0; i < pvm_.size(); ++i) {
    if (block_active(i) && pvm_.block(i).rank > 1) return false;
  }
  return true;
}

double ConstraintSet::feasibility_residual(const DensityOperator& sigma) const {
  if (sigma.dim() != pvm_.dim()) throw DimensionMismatch("feasibility_residual");
  double residual = 0.0;
  for (std::size_t i = 0; i < pvm_.size(); ++i) {
    const auto& p = pvm_.projector(i);
    residual = std::max(residual, commutator_norm(p, sigma.matrix()));
    if (targets_) {
      const double t = (sigma.matrix() * p).trace().real();
      residual = std::max(residual, std::abs(t - (*targets_)[i]));
    }
  }
  return residual;
}

bool ConstraintSet::is_feasible(const DensityOperator& sigma, double feas_tol) const {
  return feasibility_residual(sigma) <= feas_tol;
}

// ---------------------------------------------------------------------------
// Directions and spectra

BlockUnitary BlockUnitary::from_local(const ProjectiveDecomposition& pvm, std::size_t block,
                                      const ComplexMatrix& local_generator) {
  if (block >= pvm.size()) throw InvalidArgument("block index out of range");
  const auto& b = pvm.basis(block);
  if (local_generator.rows() != b.cols() || local_generator.cols() != b.cols()) {
    throw DimensionMismatch("local generator must be r_i x r_i");
  }
  return {block, b * local_generator * b.adjoint()};
}

BlockSpectrum::BlockSpectrum(const DensityOperator& sigma, const ProjectiveDecomposition& pvm) {
  if (sigma.dim() != pvm.dim()) throw DimensionMismatch("BlockSpectrum");
  std::size_t offset = 0;
  double largest = 0.0;
  blocks.reserve(pvm.size());
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(pvm.compress(sigma.matrix(), i)));
    Block b{es.eigenvalues(), es.eigenvectors(), pvm.basis(i) * es.eigenvectors(), offset};
    largest = std::max(largest, b.eigenvalues.cwiseAbs().maxCoeff());
    offset += static_cast<std::size_t>(b.eigenvalues.size());
    blocks.push_back(std::move(b));
  }
  clamp = kDefaultTolerances.eigen_clamp * std::max(1.0, largest);
}

std::size_t BlockSpectrum::size() const {
  return blocks.empty() ? 0
                        : blocks.back().offset + static_cast<std::size_t>(blocks.back().eigenvalues.size());
}

std::pair<std::size_t, Eigen::Index> BlockSpectrum::locate(std::size_t global) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto end = blocks[i].offset + static_cast<std::size_t>(blocks[i].eigenvalues.size());
    if (global < end) return {i, static_cast<Eigen::Index>(global - blocks[i].offset)};
  }
  throw InvalidArgument("eigenvalue index out of range");
}

double BlockSpectrum::eigenvalue(std::size_t global) const {
  const auto [i, k] = locate(global);
  return blocks[i].eigenvalues(k);
}

// ---------------------------------------------------------------------------
// Gradient and directional derivatives

ComplexMatrix objective_gradient(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("objective_gradient");
  const auto eig = sigma.eig();
  if (eig.eigenvalues.minCoeff() <= clamp_threshold(eig)) {
    throw SingularState("gradient of -tr(rho ln sigma) needs full-rank sigma");
  }
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix rho_tilde = v.adjoint() * rho.matrix() * v;
  return hermitian_part(v * divided_difference_gradient(rho_tilde, eig.eigenvalues) * v.adjoint());
}

FirstOrderProbe::FirstOrderProbe(const DensityOperator& rho, const DensityOperator& sigma,
                                 const ProjectiveDecomposition& pvm, const Tolerances& tol)
    : pvm_(pvm), spectrum_(sigma, pvm), support_tol_(tol.support) {
  if (rho.dim() != pvm.dim()) throw DimensionMismatch("FirstOrderProbe");
  double outside = 0.0;
  rho_local_.reserve(pvm.size());
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    const auto& v = spectrum_.blocks[i].vectors;
    ComplexMatrix local = v.adjoint() * rho.matrix() * v;
    const auto& s = spectrum_.blocks[i].eigenvalues;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) <= spectrum_.clamp) outside += local(k, k).real();
    }
    rho_local_.push_back(std::move(local));
  }
  if (outside >= support_tol_) {
    throw DomainError("D(rho, sigma) is infinite; no first-order analysis at this point");
  }
}

double FirstOrderProbe::derivative(const TangentDirection& dir) const {
  return std::visit(
      [this](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BlockUnitary>) {
          return rotation_derivative(d);
        } else {
          return transfer_derivative(d);
        }
      },
      dir);
}

double FirstOrderProbe::rotation_derivative(const BlockUnitary& dir) const {
  if (dir.block >= pvm_.size()) throw InvalidArgument("block index out of range");
  const ComplexMatrix& l = dir.generator;
  if (l.rows() != pvm_.dim() || l.cols() != pvm_.dim()) {
    throw DimensionMismatch("generator must be dim x dim");
  }
  const double scale = std::max(1.0, l.norm());
  if ((l + l.adjoint()).cwiseAbs().maxCoeff() > kDefaultTolerances.hermitian * scale) {
    throw InvalidArgument("block rotation generator must be anti-Hermitian");
  }
  const auto& p = pvm_.projector(dir.block);
  if ((l - p * l * p).cwiseAbs().maxCoeff() > kDefaultTolerances.hermitian * scale) {
    throw InvalidArgument("block rotation generator must be supported on its block");
  }

  const auto& blk = spectrum_.blocks[dir.block];
  const ComplexMatrix lt = blk.vectors.adjoint() * l * blk.vectors;
  const ComplexMatrix& rt = rho_local(dir.block);
  const auto& s = blk.eigenvalues;
  const Eigen::Index r = s.size();

  // Rotating a kernel vector k of sigma gives rho weight t^2 |rho^1/2 L k|^2
  // outside the rotated support, so D jumps to +inf for every t != 0.
  const ComplexMatrix leak_form = lt.adjoint() * rt * lt;
  double leak = 0.0;
  for (Eigen::Index k = 0; k < r; ++k) {
    if (s(k) <= spectrum_.clamp) leak += leak_form(k, k).real();
  }
  if (leak > support_tol_) return kInf;

  // dD/dt = -tr(L [ln sigma, rho]) with ln taken on the support.
  RealVector log_s(r);
  for (Eigen::Index k = 0; k < r; ++k) log_s(k) = s(k) > spectrum_.clamp ? std::log(s(k)) : 0.0;
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index m = 0; m < r; ++m) {
      acc += lt(m, k) * (log_s(k) - log_s(m)) * rt(k, m);
    }
  }
  return -acc.real();
}

double FirstOrderProbe::transfer_derivative(const SpectrumTransfer& dir) const {
  if (dir.from == dir.to) throw InvalidArgument("spectrum transfer needs two distinct indices");
  const auto [bf, kf] = spectrum_.locate(dir.from);
  const auto [bt, kt] = spectrum_.locate(dir.to);
  if ((bf == bt) != dir.within_block) {
    throw InvalidArgument("within_block flag does not match the eigenvalue indices");
  }
  const double s_from = spectrum_.blocks[bf].eigenvalues(kf);
  const double s_to = spectrum_.blocks[bt].eigenvalues(kt);
  if (s_from <= spectrum_.clamp) {
    throw UndefinedDirection("transfer out of a zero eigenvalue leaves the PSD cone");
  }
  const double r_from = rho_local(bf)(kf, kf).real();
  const double r_to = rho_local(bt)(kt, kt).real();
  // d/dt of -r_f ln(s_f - t) - r_t ln(s_t + t); a kernel target carries r_t = 0.
  const double into = s_to > spectrum_.clamp ? r_to / s_to : 0.0;
  return r_from / s_from - into;
}

double directional_derivative(const DensityOperator& rho, const DensityOperator& sigma,
                              const ProjectiveDecomposition& pvm, const TangentDirection& dir) {
  return FirstOrderProbe(rho, sigma, pvm).derivative(dir);
}

// ---------------------------------------------------------------------------
// First-order certificates

namespace {

struct TransferPair {
  std::size_t from;
  std::size_t to;
  bool within_block;
};

std::vector<TransferPair> admissible_transfers(const BlockSpectrum& spec, const ConstraintSet& cset,
                                               bool into_kernel_only) {
  std::vector<TransferPair> pairs;
  for (std::size_t bf = 0; bf < spec.blocks.size(); ++bf) {
    if (!cset.block_active(bf)) continue;
    const auto& from_block = spec.blocks[bf];
    for (Eigen::Index kf = 0; kf < from_block.eigenvalues.size(); ++kf) {
      if (from_block.eigenvalues(kf) <= spec.clamp) continue;
      for (std::size_t bt = 0; bt < spec.blocks.size(); ++bt) {
        if (!cset.block_active(bt)) continue;
        if (bt != bf && !cset.allows_cross_block_transfer()) continue;
        const auto& to_block = spec.blocks[bt];
        for (Eigen::Index kt = 0; kt < to_block.eigenvalues.size(); ++kt) {
          if (bt == bf && kt == kf) continue;
          if (into_kernel_only && to_block.eigenvalues(kt) > spec.clamp) continue;
          pairs.push_back({from_block.offset + static_cast<std::size_t>(kf),
                           to_block.offset + static_cast<std::size_t>(kt), bt == bf});
        }
      }
    }
  }
  return pairs;
}

}  // namespace

FirstOrderReport check_first_order(const DensityOperator& rho, const DensityOperator& sigma,
                                   const ConstraintSet& cset, std::size_t n_directions,
                                   std::uint64_t seed, double opt_tol) {
  const double residual = cset.feasibility_residual(sigma);
  if (residual > kDefaultTolerances.feasibility) {
    std::ostringstream os;
    os << "feasibility residual " << residual;
    throw InfeasiblePoint(os.str());
  }
  const FirstOrderProbe probe(rho, sigma, cset.pvm());
  const auto& spec = probe.spectrum();

  std::vector<std::size_t> rotation_blocks;
  for (std::size_t i = 0; i < cset.pvm().size(); ++i) {
    if (cset.block_active(i) && cset.pvm().block(i).rank >= 2) rotation_blocks.push_back(i);
  }
  const auto transfers = admissible_transfers(spec, cset, false);

  FirstOrderReport report;
  if (rotation_blocks.empty() && transfers.empty()) return report;
  report.min_derivative = kInf;

  auto record = [&](TangentDirection dir, double d) {
    ++report.evaluated;
    report.min_derivative = std::min(report.min_derivative, d);
    if (d < -opt_tol) report.witnesses.push_back({std::move(dir), d});
  };

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t j = 0; j < n_directions; ++j) {
    const bool rotate = !rotation_blocks.empty() && (transfers.empty() || j % 2 == 0);
    if (rotate) {
      std::uniform_int_distribution<std::size_t> pick(0, rotation_blocks.size() - 1);
      const std::size_t block = rotation_blocks[pick(rng)];
      const Eigen::Index r = cset.pvm().block(block).rank;
      ComplexMatrix x(r, r);
      for (Eigen::Index c = 0; c < r; ++c) {
        for (Eigen::Index q = 0; q < r; ++q) {
          const double re = normal(rng);
          const double im = normal(rng);
          x(q, c) = Complex(re, im);
        }
      }
      ComplexMatrix gen = 0.5 * (x - x.adjoint());
      gen /= gen.norm();
      auto dir = BlockUnitary::from_local(cset.pvm(), block, gen);
      const double d = probe.derivative(dir);
      BlockUnitary reverse{block, -dir.generator};
      record(std::move(dir), d);
      record(std::move(reverse), std::isinf(d) ? d : -d);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, transfers.size() - 1);
      const auto& t = transfers[pick(rng)];
      SpectrumTransfer forward{t.from, t.to, t.within_block};
      record(forward, probe.derivative(forward));
      if (spec.eigenvalue(t.to) > spec.clamp) {
        SpectrumTransfer backward{t.to, t.from, t.within_block};
        record(backward, probe.derivative(backward));
      }
    }
  }
  return report;
}

std::optional<double> inward_boundary_derivative(const DensityOperator& rho,
                                                 const DensityOperator& sigma,
                                                 const ConstraintSet& cset) {
  const FirstOrderProbe probe(rho, sigma, cset.pvm());
  const auto pairs = admissible_transfers(probe.spectrum(), cset, true);
  if (pairs.empty()) return std::nullopt;
  double lowest = kInf;
  for (const auto& p : pairs) {
    lowest = std::min(lowest, probe.derivative(SpectrumTransfer{p.from, p.to, p.within_block}));
  }
  return lowest;
}

// ---------------------------------------------------------------------------
// Minimization

namespace {

/// sigma restricted to one active block, kept as its eigendecomposition.
struct BlockIterate {
  std::size_t index;
  double target;        // fixed block trace (Jeffrey); unused for weak
  double step_scale;    // target / tr(rho_i) for Jeffrey, 1 for weak
  ComplexMatrix rho;    // B_i* rho B_i
  RealVector s;         // eigenvalues of sigma_i
  ComplexMatrix vecs;   // eigenvectors of sigma_i (local coordinates)
};

struct Evaluation {
  double objective;                  // D(rho, sigma) restricted to active blocks
  std::vector<ComplexMatrix> grad;   // gradient in each block's eigenbasis
};

class MirrorDescent {
 public:
  MirrorDescent(const DensityOperator& rho, const ConstraintSet& cset) : cset_(cset) {
    const auto& pvm = cset.pvm();
    negentropy_ = negentropy(rho.eig());
    const double n = static_cast<double>(pvm.dim());
    for (std::size_t i = 0; i < pvm.size(); ++i) {
      if (!cset.block_active(i)) continue;
      const Eigen::Index r = pvm.block(i).rank;
      const double target = cset.targets() ? (*cset.targets())[i] : static_cast<double>(r) / n;
      ComplexMatrix local = hermitian_part(pvm.compress(rho.matrix(), i));
      // Jeffrey blocks decouple, so a per-block step leaves the minimizer unchanged.
      const double scale = cset.targets() ? target / local.trace().real() : 1.0;
      blocks_.push_back({i, target, scale, std::move(local),
                         RealVector::Constant(r, target / static_cast<double>(r)),
                         ComplexMatrix::Identity(r, r)});
    }
  }

  const std::vector<BlockIterate>& blocks() const { return blocks_; }

  Evaluation evaluate(const std::vector<BlockIterate>& state) const {
    Evaluation e{negentropy_, {}};
    e.grad.reserve(state.size());
    for (const auto& b : state) {
      const ComplexMatrix rt = b.vecs.adjoint() * b.rho * b.vecs;
      for (Eigen::Index k = 0; k < b.s.size(); ++k) e.objective -= rt(k, k).real() * std::log(b.s(k));
      e.grad.push_back(divided_difference_gradient(rt, b.s));
    }
    return e;
  }

  /// tr(G sigma) - min over the feasible set of tr(G tau).
  double stationarity_gap(const std::vector<BlockIterate>& state, const Evaluation& e) const {
    double along = 0.0;
    double best = kInf;
    double best_weighted = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
      const auto& g = e.grad[j];
      for (Eigen::Index k = 0; k < state[j].s.size(); ++k) along += g(k, k).real() * state[j].s(k);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(g), Eigen::EigenvaluesOnly);
      const double lowest = es.eigenvalues()(0);
      best = std::min(best, lowest);
      best_weighted += state[j].target * lowest;
    }
    return along - (cset_.kind() == ConstraintKind::Weak ? best : best_weighted);
  }

  /// sigma_i <- normalize(exp(ln sigma_i - eta G_i)).
  std::vector<BlockIterate> step(const std::vector<BlockIterate>& state, const Evaluation& e,
                                 double eta) const {
    std::vector<BlockIterate> next = state;
    std::vector<RealVector> logs(state.size());
    double global_max = -kInf;
    for (std::size_t j = 0; j < state.size(); ++j) {
      const auto& b = state[j];
      ComplexMatrix m = -(eta * b.step_scale) * e.grad[j];
      m.diagonal() += b.s.array().log().matrix().cast<Complex>();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
      logs[j] = es.eigenvalues();
      next[j].vecs = b.vecs * es.eigenvectors();
      global_max = std::max(global_max, logs[j].maxCoeff());
    }
    if (cset_.kind() == ConstraintKind::Weak) {
      double z = 0.0;
      for (std::size_t j = 0; j < state.size(); ++j) {
        next[j].s = (logs[j].array() - global_max).exp().matrix();
        z += next[j].s.sum();
      }
      for (auto& b : next) b.s = (b.s / z).cwiseMax(kEigenFloor);
    } else {
      for (std::size_t j = 0; j < state.size(); ++j) {
        RealVector w = (logs[j].array() - logs[j].maxCoeff()).exp().matrix();
        next[j].s = (state[j].target * w / w.sum()).cwiseMax(kEigenFloor);
      }
    }
    return next;
  }

  static double change(const std::vector<BlockIterate>& a, const std::vector<BlockIterate>& b) {
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      total += trace_norm(local_density(a[j].s, a[j].vecs) - local_density(b[j].s, b[j].vecs));
    }
    return total;
  }

  DensityOperator assemble(const std::vector<BlockIterate>& state) const {
    const auto& pvm = cset_.pvm();
    std::vector<ComplexMatrix> local(pvm.size());
    for (std::size_t i = 0; i < pvm.size(); ++i) {
      const Eigen::Index r = pvm.block(i).rank;
      local[i] = ComplexMatrix::Zero(r, r);
    }
    for (const auto& b : state) local[b.index] = local_density(b.s, b.vecs);
    return DensityOperator(hermitian_part(pvm.assemble(local)));
  }

 private:
  const ConstraintSet& cset_;
  double negentropy_ = 0.0;
  std::vector<BlockIterate> blocks_;
};

void check_jeffrey_support(const DensityOperator& rho, const ConstraintSet& cset) {
  if (!cset.targets()) return;
  const auto born = block_trace(rho, cset.pvm());
  const double zero = kDefaultTolerances.zero_probability;
  for (std::size_t i = 0; i < born.size(); ++i) {
    if ((*cset.targets())[i] > zero && born[i] <= zero) {
      std::ostringstream os;
      os << "block " << i << " has target probability " << (*cset.targets())[i]
         << " but prior weight " << born[i];
      throw DegenerateConstraint(os.str());
    }
  }
}

}  // namespace

MinimizationResult minimize(const DensityOperator& rho, const ConstraintSet& cset,
                            const MinimizeOptions& opts) {
  if (rho.dim() != cset.pvm().dim()) throw DimensionMismatch("minimize");
  check_jeffrey_support(rho, cset);

  MirrorDescent md(rho, cset);
  std::vector<BlockIterate> state = md.blocks();
  Evaluation eval = md.evaluate(state);
  std::vector<double> history;
  if (opts.record_history) history.push_back(eval.objective);

  double eta = opts.initial_step;
  double gap = md.stationarity_gap(state, eval);
  bool settled = false;
  int iterations = 0;
  while (iterations < opts.max_iter) {
    ++iterations;
    auto trial = md.step(state, eval, eta);
    auto trial_eval = md.evaluate(trial);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(eval.objective));
    if (!std::isfinite(trial_eval.objective) || trial_eval.objective > eval.objective + noise) {
      eta *= opts.backoff;
      if (eta < opts.min_step) break;
      continue;
    }
    const double moved = MirrorDescent::change(state, trial);
    state = std::move(trial);
    eval = std::move(trial_eval);
    gap = md.stationarity_gap(state, eval);
    if (opts.record_history) history.push_back(eval.objective);
    if (moved <= opts.step_tol && gap <= opts.opt_tol) {
      settled = true;
      break;
    }
  }

  auto minimizer = md.assemble(state);
  const auto objective = relative_entropy(rho, minimizer);
  MinimizationResult result{.minimizer = std::move(minimizer),
                            .objective = objective,
                            .iterations = iterations,
                            .converged = false,
                            .stationarity_gap = gap,
                            .min_directional_derivative = std::nullopt,
                            .feasibility_residual = 0.0,
                            .trace_distance_to_analytic = std::nullopt,
                            .boundary_inward_derivative = std::nullopt,
                            .objective_history = {}};
  result.feasibility_residual = cset.feasibility_residual(result.minimizer);
  result.objective_history = std::move(history);
  if (opts.certificate_directions > 0 && result.objective.is_finite()) {
    try {
      result.min_directional_derivative =
          check_first_order(rho, result.minimizer, cset, opts.certificate_directions, opts.seed,
                            opts.opt_tol)
              .min_derivative;
    } catch (const DomainError&) {
      // Objective is infinite on the clamped support; no certificate.
    }
  }
  const bool stationary = gap <= opts.opt_tol;
  result.converged = (settled || stationary) && result.feasibility_residual <= opts.feas_tol &&
                     (!result.min_directional_derivative ||
                      *result.min_directional_derivative >= -opts.opt_tol);
  return result;
}

DensityOperator analytic_projection(const DensityOperator& rho, const ConstraintSet& cset) {
  if (cset.kind() == ConstraintKind::Weak) return weak_collapse(rho, cset.pvm()).post_state;
  return jeffrey_collapse(rho, cset.pvm(), *cset.targets()).post_state;
}

MinimizationResult boundary_case_check(const DensityOperator& rho, const ConstraintSet& cset,
                                       const MinimizeOptions& opts) {
  if (rho.rank() == rho.dim()) {
    throw InvalidArgument("boundary_case_check expects a rank-deficient state");
  }
  auto result = minimize(rho, cset, opts);
  const auto analytic = analytic_projection(rho, cset);
  result.trace_distance_to_analytic = trace_distance(result.minimizer.matrix(), analytic.matrix());
  if (relative_entropy(rho, analytic).is_finite()) {
    result.boundary_inward_derivative = inward_boundary_derivative(rho, analytic, cset);
  }
  return result;
}

DensityOperator random_feasible_state(const ConstraintSet& cset, Rng& rng) {
  const auto& pvm = cset.pvm();
  if (cset.kind() == ConstraintKind::Weak) {
    return DensityOperator(hermitian_part(pvm.pinch(random_density(pvm.dim(), pvm.dim(), rng).matrix())));
  }
  std::vector<ComplexMatrix> local(pvm.size());
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    const Eigen::Index r = pvm.block(i).rank;
    const double p = (*cset.targets())[i];
    local[i] = p > 0.0 ? ComplexMatrix(p * random_density(r, r, rng).matrix())
                       : ComplexMatrix::Zero(r, r);
  }
  return DensityOperator(hermitian_part(pvm.assemble(local)));
}

}  // namespace mre
