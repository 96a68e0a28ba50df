#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mre/states.hpp"

namespace mre {

enum class CampaignKind { Weak, Jeffrey, StrongLimit, BayesDemo };

std::string_view to_string(CampaignKind kind);

struct CampaignConfig {
  CampaignKind kind = CampaignKind::Weak;
  Eigen::Index dim = 2;
  std::vector<Eigen::Index> block_ranks{1, 1};
  int trials = 1;
  std::uint64_t seed = 0;
  Eigen::Index rank = 0;  // 0 means full rank
  std::vector<double> probs;  // Jeffrey targets, one per block
  std::size_t k = 0;          // strong-limit block, zero-based
  std::vector<double> p1_sequence{0.9, 0.99, 0.999, 1.0 - 1e-6};

  double distance_tol = 1e-6;
  double objective_gap_tol = 1e-8;
  double derivative_tol = 1e-8;
  std::size_t certificate_directions = 200;

  // Fixed inputs; when absent each trial samples its own.
  std::optional<DensityOperator> rho;
  std::optional<ProjectiveDecomposition> pvm;

  Eigen::Index state_rank() const { return rank == 0 ? dim : rank; }
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double distance = 0.0;  // minimizer vs closed form, Jeffrey path vs strong, or quantum vs classical
  std::optional<double> objective_gap;  // |D(min) - D(closed form)|; Bayes vs maxent for bayes-demo
  std::optional<double> min_directional_derivative;
  int iterations = 0;
  bool converged = true;
  bool passed = false;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<TrialRecord> records;  // sorted by trial index

  double max_distance() const;
  double max_objective_gap() const;
  std::optional<double> min_directional_derivative() const;
  int passed_trials() const;
  bool all_passed() const;
};

/// Runs every trial (trial t uses seed + t) and returns the records.
CampaignReport run_verify(const CampaignConfig& config);

/// Report JSON; the timestamp is the only non-deterministic field and lives
/// in "header".
nlohmann::json to_json(const CampaignReport& report, const std::string& timestamp);

/// One row per trial.
std::string to_csv(const CampaignReport& report);

}  // namespace mre
