#include <doctest.h>

#include <cmath>

#include "mre/collapse.hpp"
#include "mre/errors.hpp"
#include "support.hpp"

using namespace mre;
using namespace mre::testing;

namespace {

ProjectiveDecomposition coordinate(std::initializer_list<Eigen::Index> ranks) {
  const std::vector<Eigen::Index> r(ranks);
  return ProjectiveDecomposition::coordinate(r);
}

DensityOperator plus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityOperator(m);
}

}  // namespace

TEST_CASE("weak collapse examples") {
  Rng rng(2);
  const auto rho = random_density(3, 3, rng);
  CHECK(max_abs(weak_collapse(rho, coordinate({3})).post_state.matrix() - rho.matrix()) < 1e-15);

  const auto out = weak_collapse(plus_state(), coordinate({1, 1}));
  CHECK(max_abs(out.post_state.matrix() - diag({0.5, 0.5})) < 1e-15);
  CHECK(out.outcome_probabilities == std::vector<double>{0.5, 0.5});
  CHECK(out.rule == CollapseRule::Weak);
}

TEST_CASE("strong collapse examples") {
  const auto out = strong_collapse(plus_state(), coordinate({1, 1}), 0);
  CHECK(max_abs(out.post_state.matrix() - diag({1, 0})) < 1e-15);
  CHECK(out.outcome_probabilities[0] == doctest::Approx(0.5));
  REQUIRE(out.selected_block.has_value());
  CHECK(*out.selected_block == 0);

  CHECK_THROWS_AS(strong_collapse(diag_state({1, 0}), coordinate({1, 1}), 1),
                  ZeroProbabilityOutcome);
  CHECK_THROWS_AS(strong_collapse(diag_state({1, 0}), coordinate({1, 1}), 2), InvalidArgument);
}

TEST_CASE("strong collapse is idempotent") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(800 + static_cast<std::uint64_t>(seed));
    const auto rho = random_density(5, 1 + seed % 5, rng);
    const std::vector<Eigen::Index> ranks{2, 3};
    const auto pvm = random_pvm(5, ranks, rng);
    const std::size_t k = static_cast<std::size_t>(seed % 2);
    const auto once = strong_collapse(rho, pvm, k).post_state;
    CHECK(std::abs((pvm.projector(k) * once.matrix()).trace().real() - 1.0) < 1e-10);
    const auto twice = strong_collapse(once, pvm, k).post_state;
    CHECK(max_abs(twice.matrix() - once.matrix()) < 1e-12);
  }
}

TEST_CASE("Jeffrey collapse examples") {
  const auto pvm = coordinate({1, 2});
  const auto out = jeffrey_collapse(diag_state({0.5, 0.3, 0.2}), pvm, BlockProbabilities({0.6, 0.4}));
  CHECK(max_abs(out.post_state.matrix() - diag({0.6, 0.24, 0.16})) < 1e-15);

  Rng rng(5);
  const auto rho = random_density(4, 4, rng);
  const std::vector<Eigen::Index> ranks{1, 2, 1};
  const auto p4 = random_pvm(4, ranks, rng);
  const auto born = block_trace(rho, p4);
  CHECK(max_abs(jeffrey_collapse(rho, p4, BlockProbabilities(born)).post_state.matrix() -
                weak_collapse(rho, p4).post_state.matrix()) < 1e-12);
  CHECK(max_abs(jeffrey_collapse(rho, p4, BlockProbabilities({1, 0, 0})).post_state.matrix() -
                strong_collapse(rho, p4, 0).post_state.matrix()) < 1e-12);
}

TEST_CASE("Jeffrey collapse with a zero-weight block") {
  const auto pvm = coordinate({1, 1, 1});
  CHECK_THROWS_AS(jeffrey_collapse(diag_state({0.5, 0.5, 0}), pvm, BlockProbabilities({0.5, 0.3, 0.2})),
                  DegenerateConstraint);
  const auto out =
      jeffrey_collapse(diag_state({0.5, 0.5, 0}), pvm, BlockProbabilities({0.25, 0.75, 0}));
  CHECK(max_abs(out.post_state.matrix() - diag({0.25, 0.75, 0})) < 1e-15);
}

TEST_CASE("collapse properties on random instances") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(900 + static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 2 + seed % 6;
    const auto rho = random_density(n, 1 + seed % n, rng);
    std::vector<Eigen::Index> ranks{1, n - 1};
    const auto pvm = random_pvm(n, ranks, rng);

    const auto w = weak_collapse(rho, pvm).post_state;
    CHECK(max_abs(pvm.pinch(w.matrix()) - w.matrix()) < 1e-14);
    CHECK(max_abs(weak_collapse(w, pvm).post_state.matrix() - w.matrix()) < 1e-14);
    CHECK(max_abs(jeffrey_collapse(rho, pvm, BlockProbabilities(block_trace(rho, pvm)))
                      .post_state.matrix() -
                  w.matrix()) < 1e-12);

    // Covariance under unitaries that commute with every projector.
    std::vector<ComplexMatrix> local;
    for (std::size_t i = 0; i < pvm.size(); ++i) local.push_back(random_unitary(pvm.block(i).rank, rng));
    const ComplexMatrix u = pvm.assemble(local);
    const DensityOperator rotated(hermitian_part(u * rho.matrix() * u.adjoint()));
    CHECK(max_abs(weak_collapse(rotated, pvm).post_state.matrix() -
                  u * w.matrix() * u.adjoint()) < 1e-12);
  }
}

TEST_CASE("limit probabilities") {
  const std::vector<double> born{0.2, 0.5, 0.3};
  const auto p = limit_probabilities(born, 1, 0.9);
  CHECK(p[1] == doctest::Approx(0.9));
  CHECK(p[0] == doctest::Approx(0.1 * 0.4));
  CHECK(p[2] == doctest::Approx(0.1 * 0.6));
  const std::vector<double> only{0.0, 1.0};
  CHECK_THROWS_AS(limit_probabilities(only, 1, 0.9), DegenerateConstraint);
}

TEST_CASE("strong limit path") {
  const std::vector<double> one{1.0};
  const auto rho = diag_state({0.3, 0.7});
  const auto pvm = coordinate({1, 1});
  CHECK(strong_limit_trace(rho, pvm, 0, one)[0].trace_distance < 1e-15);

  const std::vector<double> seq{0.9, 0.99, 0.999, 1 - 1e-6};
  for (const auto& pt : strong_limit_trace(rho, pvm, 0, seq)) {
    CHECK(std::abs(pt.trace_distance - (1 - pt.p_selected)) < 1e-12);
  }

  Rng rng(9);
  const auto r3 = random_density(3, 3, rng);
  const std::vector<Eigen::Index> ranks{1, 2};
  const auto p3 = random_pvm(3, ranks, rng);
  const std::vector<double> short_seq{0.9, 0.99, 0.999};
  const auto path = strong_limit_trace(r3, p3, 0, short_seq);
  CHECK(path[1].trace_distance < path[0].trace_distance);
  CHECK(path[2].trace_distance < path[1].trace_distance);

  const std::vector<double> descending{0.99, 0.9};
  CHECK_THROWS_AS(strong_limit_trace(r3, p3, 0, descending), InvalidArgument);
}
