#include <doctest.h>

#include <cmath>

#include "mre/errors.hpp"
#include "mre/hermitian.hpp"
#include "support.hpp"

using namespace mre;
using namespace mre::testing;

TEST_CASE("eigendecomposition of a diagonal matrix") {
  const auto e = hermitian_eig(diag({3, 1, 2}));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(e.eigenvalues(2) == doctest::Approx(3.0));
  // Eigenvectors are permuted unit vectors up to phase.
  const ComplexMatrix mags = e.eigenvectors.cwiseAbs().cast<Complex>();
  ComplexMatrix perm = ComplexMatrix::Zero(3, 3);
  perm(1, 0) = perm(2, 1) = perm(0, 2) = 1.0;
  CHECK(max_abs(mags - perm) < 1e-12);
}

TEST_CASE("Pauli-X spectrum") {
  const auto e = hermitian_eig(pauli_x());
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("random Hermitian reconstruction") {
  Rng rng(7);
  const auto a = random_hermitian(6, rng);
  const auto e = hermitian_eig(a);
  CHECK((a - e.reconstruct()).norm() <= 1e-10 * std::max(1.0, a.norm()));
  CHECK(is_unitary(e.eigenvectors));
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix a(2, 2);
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(hermitian_eig(a), NonHermitianInput);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("reconstruction property over many sizes") {
  for (int seed = 0; seed < 40; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const Eigen::Index n = 1 + seed % 8;
    const auto a = random_hermitian(n, rng);
    const auto e = hermitian_eig(a);
    CHECK((a - e.reconstruct()).norm() <= 1e-10 * std::max(1.0, a.norm()));
    CHECK(max_abs(matrix_function(a, [](double x) { return x; }) - a) < 1e-10);
  }
}

TEST_CASE("functional calculus") {
  CHECK(max_abs(matrix_log(ComplexMatrix::Identity(4, 4))) < 1e-15);

  Rng rng(3);
  const auto sigma = random_density(5, 5, rng).matrix();
  CHECK(max_abs(matrix_exp(matrix_log(sigma)) - sigma) < 1e-12);

  const auto b1 = random_density(2, 2, rng).matrix();
  const auto b2 = random_density(3, 3, rng).matrix();
  ComplexMatrix a = ComplexMatrix::Zero(5, 5);
  a.topLeftCorner(2, 2) = b1;
  a.bottomRightCorner(3, 3) = b2;
  const auto la = matrix_log(a);
  CHECK(max_abs(la.topLeftCorner(2, 2) - matrix_log(b1)) < 1e-12);
  CHECK(max_abs(la.bottomRightCorner(3, 3) - matrix_log(b2)) < 1e-12);
  CHECK(max_abs(la.topRightCorner(2, 3)) < 1e-12);
}

TEST_CASE("log of singular matrices") {
  CHECK_THROWS_AS(matrix_log(diag({1, 0})), DomainError);
  CHECK_THROWS_AS(matrix_log(diag({1, -0.5}), ZeroPolicy::SupportOnly), DomainError);
  const auto l = matrix_log(diag({std::exp(1.0), 0}), ZeroPolicy::SupportOnly);
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(l(1, 1)) == 0.0);
}

TEST_CASE("predicates") {
  CHECK(is_hermitian(pauli_x()));
  CHECK(is_projector(diag({1, 0, 1})));
  CHECK_FALSE(is_projector(diag({0.5, 0.5})));
  CHECK(is_psd(diag({0.5, 0})));
  CHECK_FALSE(is_psd(pauli_z()));
  Rng rng(1);
  CHECK(is_unitary(random_unitary(5, rng)));
}

TEST_CASE("trace distance") {
  const auto a = diag({1, 0});
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(diag({1, 0}), diag({0, 1})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_distance(diag({1, 0}), diag({1, 0, 0})), DimensionMismatch);

  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(100 + static_cast<std::uint64_t>(seed));
    const auto r = random_density(4, 4, rng).matrix();
    const auto s = random_density(4, 2, rng).matrix();
    const auto t = random_density(4, 3, rng).matrix();
    CHECK(std::abs(trace_distance(r, s) - 0.5 * svd_trace_norm(r - s)) < 1e-12);
    CHECK(trace_distance(r, t) <= trace_distance(r, s) + trace_distance(s, t) + 1e-12);
  }
}

TEST_CASE("commutator norm") {
  CHECK(commutator_norm(diag({1, 2}), diag({3, 4})) == 0.0);
  CHECK(commutator_norm(pauli_x(), pauli_z()) == doctest::Approx(2.0 * std::sqrt(2.0)));
  Rng rng(4);
  const auto rho = random_density(3, 3, rng).matrix();
  const auto p = diag({1, 1, 0});
  const ComplexMatrix q = ComplexMatrix::Identity(3, 3) - p;
  const ComplexMatrix sigma = p * rho * p + q * rho * q;
  CHECK(commutator_norm(p, sigma) < 1e-15);
}
