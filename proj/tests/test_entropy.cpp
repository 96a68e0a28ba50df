#include <doctest.h>

#include <cmath>

#include "mre/collapse.hpp"
#include "mre/entropy.hpp"
#include "mre/errors.hpp"
#include "support.hpp"

using namespace mre;
using namespace mre::testing;

namespace {

// Commuting oracle: both arguments diagonal.
double diagonal_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) d += p[k] * (std::log(p[k]) - std::log(q[k]));
  }
  return d;
}

DensityOperator conjugate(const ComplexMatrix& u, const DensityOperator& r) {
  return DensityOperator(hermitian_part(u * r.matrix() * u.adjoint()));
}

}  // namespace

TEST_CASE("relative entropy examples") {
  Rng rng(1);
  const auto rho = random_density(3, 3, rng);
  CHECK(std::abs(relative_entropy(rho, rho).value()) < 1e-12);
  CHECK(relative_entropy(diag_state({1, 0}), diag_state({0.5, 0.5})).value() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(relative_entropy(diag_state({0.5, 0.5}), diag_state({1, 0})).is_infinite());
  CHECK_THROWS_AS(relative_entropy(diag_state({1, 0}), diag_state({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("relative entropy is asymmetric") {
  const auto a = diag_state({0.9, 0.1});
  const auto b = diag_state({0.5, 0.5});
  CHECK(std::abs(relative_entropy(a, b).value() - relative_entropy(b, a).value()) > 1e-3);
}

TEST_CASE("von Neumann entropy") {
  ComplexVector psi = ComplexVector::Ones(3);
  CHECK(std::abs(von_neumann_entropy(DensityOperator::pure(psi))) < 1e-12);
  for (Eigen::Index n = 1; n <= 8; ++n) {
    CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(n)) ==
          doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
  }
  for (int seed = 0; seed < 50; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 2 + seed % 7;
    const auto rho = random_density(n, 1 + seed % n, rng);
    const double lhs = von_neumann_entropy(rho);
    const double rhs = -relative_entropy(rho, DensityOperator::maximally_mixed(n)).value() +
                       std::log(static_cast<double>(n));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("discrete KL divergence") {
  const std::vector<double> p{0.2, 0.3, 0.5};
  CHECK(kl_divergence(p, p).value() == 0.0);
  CHECK(kl_divergence(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}).value() ==
        doctest::Approx(std::log(2.0)));
  CHECK(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}).is_infinite());
  CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{0.5, 0.5}), LengthMismatch);
  CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{0.5, 0.6, 0.1 + 1e-6}), NotNormalized);
}

TEST_CASE("commuting states reduce to KL") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(300 + static_cast<std::uint64_t>(seed));
    const std::size_t n = 2 + static_cast<std::size_t>(seed % 6);
    const auto p = random_probabilities(n, 0.0, rng);
    const auto q = random_probabilities(n, 0.0, rng);
    const auto d = relative_entropy(DensityOperator::diagonal(p), DensityOperator::diagonal(q));
    CHECK(std::abs(d.value() - kl_divergence(p, q).value()) < 1e-12);
    CHECK(std::abs(d.value() - diagonal_kl(p, q)) < 1e-12);
  }
}

TEST_CASE("Klein inequality and equality case") {
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(400 + static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 2 + seed % 7;
    const auto rho = random_density(n, 1 + seed % n, rng);
    const auto sigma = random_density(n, n, rng);
    const auto d = relative_entropy(rho, sigma);
    CHECK(d.value() >= 0.0);
    CHECK(d.value() > 1e-9);
    CHECK(relative_entropy(rho, rho).value() <= 1e-9);
  }
}

TEST_CASE("unitary invariance") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(500 + static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 2 + seed % 5;
    const auto rho = random_density(n, n, rng);
    const auto sigma = random_density(n, n, rng);
    const auto u = random_unitary(n, rng);
    CHECK(std::abs(relative_entropy(conjugate(u, rho), conjugate(u, sigma)).value() -
                   relative_entropy(rho, sigma).value()) < 1e-10);
  }
}

TEST_CASE("joint convexity") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(600 + static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 2 + seed % 4;
    const auto r1 = random_density(n, n, rng);
    const auto r2 = random_density(n, n, rng);
    const auto s1 = random_density(n, n, rng);
    const auto s2 = random_density(n, n, rng);
    for (double t : {0.25, 0.5, 0.75}) {
      const DensityOperator r(t * r1.matrix() + (1 - t) * r2.matrix());
      const DensityOperator s(t * s1.matrix() + (1 - t) * s2.matrix());
      CHECK(relative_entropy(r, s).value() <=
            t * relative_entropy(r1, s1).value() + (1 - t) * relative_entropy(r2, s2).value() +
                1e-10);
    }
  }
}

TEST_CASE("pinching does not lower the entropy") {
  for (int seed = 0; seed < 40; ++seed) {
    Rng rng(700 + static_cast<std::uint64_t>(seed));
    const auto rho = random_density(6, 1 + seed % 6, rng);
    const std::vector<Eigen::Index> ranks{2, 3, 1};
    const auto pvm = random_pvm(6, ranks, rng);
    const auto pinched = weak_collapse(rho, pvm).post_state;
    CHECK(von_neumann_entropy(pinched) >= von_neumann_entropy(rho) - 1e-10);
    // The relative entropy to the pinched state is the entropy increase.
    CHECK(std::abs(relative_entropy(rho, pinched).value() -
                   (von_neumann_entropy(pinched) - von_neumann_entropy(rho))) < 1e-10);
  }
}

TEST_CASE("extended reals") {
  const auto inf = ExtendedReal::infinity();
  CHECK(inf.is_infinite());
  CHECK(ExtendedReal(1.0) < inf);
  CHECK(inf == ExtendedReal::infinity());
  CHECK_FALSE(ExtendedReal(2.0) == inf);
  CHECK(std::isinf(inf.negated()));
}
