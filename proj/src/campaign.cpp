#include "mre/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mre/bayes.hpp"
#include "mre/collapse.hpp"
#include "mre/errors.hpp"
#include "mre/io.hpp"
#include "mre/log.hpp"
#include "mre/optimizer.hpp"

namespace mre {

namespace {

constexpr double kConsistencyTol = 1e-10;
constexpr double kBayesTol = 1e-12;
constexpr double kLimitSlack = 1e-10;

std::vector<double> random_simplex_point(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) total += (v = expo(rng));
  for (auto& v : w) v /= total;
  return w;
}

double objective_gap(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

TrialRecord run_projection_trial(const CampaignConfig& cfg, const ConstraintSet& cset,
                                 const DensityOperator& rho, std::uint64_t seed) {
  MinimizeOptions opts;
  opts.seed = seed;
  opts.certificate_directions = 0;
  const auto result = minimize(rho, cset, opts);
  const auto analytic = analytic_projection(rho, cset);

  TrialRecord rec;
  rec.iterations = result.iterations;
  rec.converged = result.converged;
  rec.distance = trace_distance(result.minimizer.matrix(), analytic.matrix());
  rec.objective_gap = objective_gap(result.objective, relative_entropy(rho, analytic));
  if (relative_entropy(rho, analytic).is_finite()) {
    rec.min_directional_derivative =
        check_first_order(rho, analytic, cset, cfg.certificate_directions, seed).min_derivative;
  }
  rec.passed = rec.converged && rec.distance <= cfg.distance_tol &&
               *rec.objective_gap <= cfg.objective_gap_tol &&
               (!rec.min_directional_derivative ||
                *rec.min_directional_derivative >= -cfg.derivative_tol);
  return rec;
}

TrialRecord run_limit_trial(const CampaignConfig& cfg, const DensityOperator& rho,
                            const ProjectiveDecomposition& pvm) {
  const auto path = strong_limit_trace(rho, pvm, cfg.k, cfg.p1_sequence);
  TrialRecord rec;
  rec.distance = path.back().trace_distance;
  bool ok = true;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const double p1 = path[j].p_selected;
    const double d = path[j].trace_distance;
    ok = ok && d <= 2.0 * (1.0 - p1) && d <= (1.0 - p1) + kLimitSlack;
    if (j > 0) ok = ok && d <= path[j - 1].trace_distance;
  }
  rec.passed = ok;
  return rec;
}

TrialRecord run_bayes_trial(const CampaignConfig& cfg, Rng& rng) {
  const auto n = static_cast<std::size_t>(cfg.dim);
  const DiscreteDistribution prior(random_simplex_point(n, rng));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> lik(n);
  for (auto& v : lik) v = unit(rng);
  const LikelihoodModel model(lik);

  const auto direct = bayes_update(prior, model);
  const auto via_maxent = bayes_update_by_maxent(prior, model);
  double diff = 0.0;
  for (std::size_t x = 0; x < n; ++x) diff = std::max(diff, std::abs(direct[x] - via_maxent[x]));

  const auto pvm = ProjectiveDecomposition::coordinate(cfg.block_ranks);
  const auto target = BlockProbabilities(random_simplex_point(pvm.size(), rng));
  const auto rho = DensityOperator::diagonal(prior.weights());
  const double consistency = quantum_classical_consistency(rho, pvm, target);

  TrialRecord rec;
  rec.distance = consistency;
  rec.objective_gap = diff;
  rec.passed = diff <= kBayesTol && consistency <= kConsistencyTol;
  return rec;
}

}  // namespace

std::string_view to_string(CampaignKind kind) {
  switch (kind) {
    case CampaignKind::Weak: return "weak";
    case CampaignKind::Jeffrey: return "jeffrey";
    case CampaignKind::StrongLimit: return "strong_limit";
    case CampaignKind::BayesDemo: return "bayes_demo";
  }
  return "unknown";
}

void CampaignConfig::validate() const {
  if (dim <= 0) throw ConfigError("--dim must be positive");
  if (trials < 1) throw ConfigError("--trials must be at least 1");
  if (block_ranks.empty()) throw ConfigError("--blocks is empty");
  Eigen::Index total = 0;
  for (auto r : block_ranks) {
    if (r <= 0) throw ConfigError("block ranks must be positive");
    total += r;
  }
  if (total != dim) {
    std::ostringstream os;
    os << "block ranks sum to " << total << " but --dim is " << dim;
    throw ConfigError(os.str());
  }
  if (rank < 0 || rank > dim) throw ConfigError("--rank must lie in [1, dim]");
  if (kind == CampaignKind::Jeffrey) {
    if (probs.size() != block_ranks.size()) throw ConfigError("--probs needs one entry per block");
    try {
      BlockProbabilities check(probs);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (kind == CampaignKind::StrongLimit) {
    if (k >= block_ranks.size()) throw ConfigError("--k is out of range");
    if (p1_sequence.empty()) throw ConfigError("empty p1 sequence");
    for (std::size_t j = 0; j < p1_sequence.size(); ++j) {
      if (!(p1_sequence[j] > 0.0 && p1_sequence[j] <= 1.0)) {
        throw ConfigError("p1 values must lie in (0, 1]");
      }
      if (j > 0 && !(p1_sequence[j] > p1_sequence[j - 1])) {
        throw ConfigError("p1 sequence must be strictly ascending");
      }
    }
  }
  if (rho && rho->dim() != dim) throw ConfigError("--rho dimension differs from --dim");
  if (pvm) {
    if (pvm->dim() != dim) throw ConfigError("--pvm dimension differs from --dim");
    if (pvm->ranks() != block_ranks) throw ConfigError("--pvm block ranks differ from --blocks");
  }
  if (!(distance_tol > 0.0)) throw ConfigError("--tol must be positive");
}

double CampaignReport::max_distance() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, r.distance);
  return m;
}

double CampaignReport::max_objective_gap() const {
  double m = 0.0;
  for (const auto& r : records) {
    if (r.objective_gap) m = std::max(m, *r.objective_gap);
  }
  return m;
}

std::optional<double> CampaignReport::min_directional_derivative() const {
  std::optional<double> m;
  for (const auto& r : records) {
    if (r.min_directional_derivative) {
      m = m ? std::min(*m, *r.min_directional_derivative) : *r.min_directional_derivative;
    }
  }
  return m;
}

int CampaignReport::passed_trials() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(),
                                        [](const TrialRecord& r) { return r.passed; }));
}

bool CampaignReport::all_passed() const {
  return passed_trials() == static_cast<int>(records.size());
}

CampaignReport run_verify(const CampaignConfig& config) {
  config.validate();
  CampaignReport report{config, {}};
  report.records.reserve(static_cast<std::size_t>(config.trials));
  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(t);
    Rng rng(seed);
    TrialRecord rec;
    if (config.kind == CampaignKind::BayesDemo) {
      rec = run_bayes_trial(config, rng);
    } else {
      const auto rho = config.rho ? *config.rho
                                  : random_density(config.dim, config.state_rank(), rng);
      const auto pvm = config.pvm ? *config.pvm : random_pvm(config.dim, config.block_ranks, rng);
      switch (config.kind) {
        case CampaignKind::Weak:
          rec = run_projection_trial(config, ConstraintSet::weak(pvm), rho, seed);
          break;
        case CampaignKind::Jeffrey:
          rec = run_projection_trial(
              config, ConstraintSet::jeffrey(pvm, BlockProbabilities(config.probs)), rho, seed);
          break;
        default:
          rec = run_limit_trial(config, rho, pvm);
          break;
      }
    }
    rec.trial = t;
    rec.seed = seed;
    log::debug("trial ", t, " seed ", seed, " distance ", rec.distance, " passed ", rec.passed);
    report.records.push_back(rec);
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  log::info(to_string(config.kind), " campaign: ", report.passed_trials(), "/",
            report.records.size(), " trials passed, max distance ", report.max_distance());
  return report;
}

nlohmann::json to_json(const CampaignReport& report, const std::string& timestamp) {
  using nlohmann::json;
  const auto& c = report.config;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  json cfg = {{"kind", to_string(c.kind)},
              {"dim", c.dim},
              {"blocks", c.block_ranks},
              {"trials", c.trials},
              {"seed", c.seed},
              {"rank", c.state_rank()},
              {"tol", c.distance_tol},
              {"objective_gap_tol", c.objective_gap_tol},
              {"derivative_tol", c.derivative_tol},
              {"certificate_directions", c.certificate_directions}};
  if (c.kind == CampaignKind::Jeffrey) cfg["probs"] = c.probs;
  if (c.kind == CampaignKind::StrongLimit) {
    cfg["k"] = c.k + 1;
    cfg["p1_sequence"] = c.p1_sequence;
  }
  cfg["fixed_rho"] = c.rho.has_value();
  cfg["fixed_pvm"] = c.pvm.has_value();

  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"trial", r.trial},
                       {"seed", r.seed},
                       {"distance", r.distance},
                       {"objective_gap", opt(r.objective_gap)},
                       {"min_directional_derivative", opt(r.min_directional_derivative)},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"passed", r.passed}});
  }
  json aggregate = {{"max_distance", report.max_distance()},
                    {"max_objective_gap", report.max_objective_gap()},
                    {"min_directional_derivative", opt(report.min_directional_derivative())},
                    {"passed_trials", report.passed_trials()},
                    {"pass", report.all_passed()}};
  return {{"header", {{"generated_at", timestamp}}},
          {"config", std::move(cfg)},
          {"records", std::move(records)},
          {"aggregate", std::move(aggregate)}};
}

std::string to_csv(const CampaignReport& report) {
  std::ostringstream os;
  os << "trial,seed,distance,objective_gap,min_directional_derivative,iterations,converged,passed\n";
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : report.records) {
    os << r.trial << ',' << r.seed << ',' << num(r.distance) << ','
       << (r.objective_gap ? num(*r.objective_gap) : "") << ','
       << (r.min_directional_derivative ? num(*r.min_directional_derivative) : "") << ','
       << r.iterations << ',' << (r.converged ? "true" : "false") << ','
       << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace mre
