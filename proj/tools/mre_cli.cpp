// Command-line front end: verification campaigns and single-instance computations.
//
// Exit codes: 0 pass, 1 tolerance failure, 2 configuration or input error,
// 3 numerical error.

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mre/bayes.hpp"
#include "mre/campaign.hpp"
#include "mre/collapse.hpp"
#include "mre/entropy.hpp"
#include "mre/errors.hpp"
#include "mre/io.hpp"
#include "mre/log.hpp"

namespace {

enum ExitCode { kPass = 0, kToleranceFailure = 1, kConfigError = 2, kNumericalError = 3 };

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Single-line JSON with ", " and ": " separators.
std::string inline_dump(const nlohmann::json& j) {
  std::string out;
  if (j.is_object()) {
    out += '{';
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it != j.begin()) out += ", ";
      out += nlohmann::json(it.key()).dump() + ": " + inline_dump(it.value());
    }
    return out + '}';
  }
  if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ", ";
      out += inline_dump(j[i]);
    }
    return out + ']';
  }
  return j.dump();
}

struct VerifyFlags {
  Eigen::Index dim = 2;
  std::string blocks;
  std::string probs;
  int trials = 1;
  std::uint64_t seed = 0;
  Eigen::Index rank = 0;
  double tol = 1e-6;
  std::string out;
  std::string csv;
  std::string rho;
  std::string pvm;
  std::size_t k = 1;
  std::string sequence = "0.9,0.99,0.999,0.999999";
  std::size_t directions = 200;
};

void add_verify_flags(CLI::App* cmd, VerifyFlags& f, mre::CampaignKind kind) {
  cmd->add_option("--dim", f.dim, "Hilbert-space dimension")->required();
  cmd->add_option("--blocks", f.blocks, "Comma-separated block ranks summing to dim")->required();
  cmd->add_option("--trials", f.trials, "Number of trials")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Base seed; trial t uses seed + t")->capture_default_str();
  cmd->add_option("--rank", f.rank, "Rank of the sampled states (default: dim)");
  cmd->add_option("--tol", f.tol, "Trace-distance tolerance")->capture_default_str();
  cmd->add_option("--out", f.out, "Write the JSON report here instead of stdout");
  cmd->add_option("--csv", f.csv, "Also write a per-trial CSV table");
  if (kind != mre::CampaignKind::BayesDemo) {
    cmd->add_option("--rho", f.rho, "Fixed prior state (matrix JSON) for every trial");
    cmd->add_option("--pvm", f.pvm, "Fixed PVM (PVM JSON) for every trial");
  }
  if (kind == mre::CampaignKind::Jeffrey) {
    cmd->add_option("--probs", f.probs, "Comma-separated block probabilities")->required();
  }
  if (kind == mre::CampaignKind::Weak || kind == mre::CampaignKind::Jeffrey) {
    cmd->add_option("--directions", f.directions, "Tangent directions per certificate")
        ->capture_default_str();
  }
  if (kind == mre::CampaignKind::StrongLimit) {
    cmd->add_option("--k", f.k, "Selected block (1-based)")->capture_default_str();
    cmd->add_option("--sequence", f.sequence, "Ascending p1 values in (0, 1]")
        ->capture_default_str();
  }
}

mre::CampaignConfig to_config(const VerifyFlags& f, mre::CampaignKind kind) {
  mre::CampaignConfig c;
  c.kind = kind;
  c.dim = f.dim;
  try {
    c.block_ranks = mre::io::parse_indices(f.blocks);
    if (!f.probs.empty()) c.probs = mre::io::parse_doubles(f.probs);
    c.p1_sequence = mre::io::parse_doubles(f.sequence);
  } catch (const mre::ParseError& e) {
    throw mre::ConfigError(e.what());
  }
  c.trials = f.trials;
  c.seed = f.seed;
  c.rank = f.rank;
  c.distance_tol = f.tol;
  c.certificate_directions = f.directions;
  if (f.k == 0) throw mre::ConfigError("--k is 1-based");
  c.k = f.k - 1;
  if (!f.rho.empty()) c.rho = mre::io::density_from_json(mre::io::read_json_file(f.rho));
  if (!f.pvm.empty()) c.pvm = mre::io::pvm_from_json(mre::io::read_json_file(f.pvm));
  return c;
}

int run_campaign(const VerifyFlags& f, mre::CampaignKind kind) {
  const auto report = mre::run_verify(to_config(f, kind));
  const auto text = mre::to_json(report, utc_timestamp()).dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    mre::io::write_text_file(f.out, text);
  }
  if (!f.csv.empty()) mre::io::write_text_file(f.csv, mre::to_csv(report));
  std::cerr << mre::to_string(kind) << ": " << report.passed_trials() << "/"
            << report.records.size() << " trials passed\n";
  return report.all_passed() ? kPass : kToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-projection collapse rules: compute and verify"};
  app.require_subcommand(1);

  VerifyFlags weak_flags, jeffrey_flags, limit_flags, bayes_demo_flags;
  auto* verify_weak = app.add_subcommand("verify-weak", "Weak collapse vs numerical minimizer");
  add_verify_flags(verify_weak, weak_flags, mre::CampaignKind::Weak);
  auto* verify_jeffrey =
      app.add_subcommand("verify-jeffrey", "Jeffrey collapse vs numerical minimizer");
  add_verify_flags(verify_jeffrey, jeffrey_flags, mre::CampaignKind::Jeffrey);
  auto* verify_limit =
      app.add_subcommand("verify-strong-limit", "Jeffrey updates approaching the strong update");
  add_verify_flags(verify_limit, limit_flags, mre::CampaignKind::StrongLimit);
  auto* bayes_demo =
      app.add_subcommand("bayes-demo", "Bayes vs constrained KL minimization, classical vs quantum");
  add_verify_flags(bayes_demo, bayes_demo_flags, mre::CampaignKind::BayesDemo);

  std::string rho_path, sigma_path;
  auto* entropy = app.add_subcommand("entropy", "Relative or von Neumann entropy (nats)");
  entropy->add_option("--rho", rho_path, "State (matrix JSON)")->required();
  entropy->add_option("--sigma", sigma_path, "Second state; omit for von Neumann entropy");

  std::string rule = "weak", pvm_path, probs;
  std::size_t k = 1;
  auto* collapse = app.add_subcommand("collapse", "Apply a collapse rule; prints the state JSON");
  collapse->add_option("--rule", rule, "weak | strong | jeffrey")
      ->check(CLI::IsMember({"weak", "strong", "jeffrey"}))
      ->capture_default_str();
  collapse->add_option("--rho", rho_path, "Prior state (matrix JSON)")->required();
  collapse->add_option("--pvm", pvm_path, "PVM JSON")->required();
  collapse->add_option("--k", k, "Outcome block for the strong rule (1-based)")
      ->capture_default_str();
  collapse->add_option("--probs", probs, "Block probabilities for the Jeffrey rule");

  std::string prior, likelihood;
  auto* bayes = app.add_subcommand("bayes", "Bayes-Laplace posterior");
  bayes->add_option("--prior", prior, "Comma-separated prior")->required();
  bayes->add_option("--likelihood", likelihood, "Comma-separated p(b|x)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (*verify_weak) return run_campaign(weak_flags, mre::CampaignKind::Weak);
    if (*verify_jeffrey) return run_campaign(jeffrey_flags, mre::CampaignKind::Jeffrey);
    if (*verify_limit) return run_campaign(limit_flags, mre::CampaignKind::StrongLimit);
    if (*bayes_demo) return run_campaign(bayes_demo_flags, mre::CampaignKind::BayesDemo);

    using mre::io::json;
    if (*entropy) {
      const auto rho = mre::io::density_from_json(mre::io::read_json_file(rho_path));
      json out;
      if (sigma_path.empty()) {
        out["von_neumann_entropy"] = mre::von_neumann_entropy(rho);
      } else {
        const auto sigma = mre::io::density_from_json(mre::io::read_json_file(sigma_path));
        out["relative_entropy"] = mre::io::to_json(mre::relative_entropy(rho, sigma));
      }
      std::cout << inline_dump(out) << "\n";
      return kPass;
    }
    if (*collapse) {
      const auto rho = mre::io::density_from_json(mre::io::read_json_file(rho_path));
      const auto pvm = mre::io::pvm_from_json(mre::io::read_json_file(pvm_path));
      std::optional<mre::CollapseOutcome> outcome;
      if (rule == "weak") {
        outcome = mre::weak_collapse(rho, pvm);
      } else if (rule == "strong") {
        if (k == 0) throw mre::ConfigError("--k is 1-based");
        outcome = mre::strong_collapse(rho, pvm, k - 1);
      } else {
        if (probs.empty()) throw mre::ConfigError("--probs is required for the Jeffrey rule");
        outcome = mre::jeffrey_collapse(rho, pvm,
                                        mre::BlockProbabilities(mre::io::parse_doubles(probs)));
      }
      mre::log::info("outcome probabilities: ", json(outcome->outcome_probabilities).dump());
      std::cout << inline_dump(mre::io::to_json(outcome->post_state.matrix())) << "\n";
      return kPass;
    }
    if (*bayes) {
      const mre::DiscreteDistribution p(mre::io::parse_doubles(prior));
      const mre::LikelihoodModel l(mre::io::parse_doubles(likelihood));
      const auto posterior = mre::bayes_update(p, l);
      std::cout << inline_dump(json{{"posterior", posterior.weights()}}) << "\n";
      return kPass;
    }
  } catch (const mre::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == mre::ErrorCategory::Input ? kConfigError : kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kConfigError;
}
