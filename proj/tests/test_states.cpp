#include <doctest.h>

#include <cmath>

#include "mre/errors.hpp"
#include "mre/states.hpp"
#include "support.hpp"

using namespace mre;
using namespace mre::testing;

TEST_CASE("density operator validation") {
  CHECK_THROWS_AS(DensityOperator(diag({0.5, 0.4})), InvalidState);
  CHECK_THROWS_AS(DensityOperator(diag({1.5, -0.5})), InvalidState);
  ComplexMatrix a(2, 2);
  a << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityOperator{a}, InvalidState);
  CHECK(DensityOperator::maximally_mixed(3).rank() == 3);
  ComplexVector psi(2);
  psi << 1, Complex(0, 1);
  const auto p = DensityOperator::pure(psi);
  CHECK(p.rank() == 1);
  CHECK(std::abs(p.matrix()(0, 1) - Complex(0, -0.5)) < 1e-15);
}

TEST_CASE("spectral decomposition") {
  const auto d = spectral_decompose(diag({1, 1, 2}));
  REQUIRE(d.size() == 2);
  CHECK(d.block(0).eigenvalue == doctest::Approx(1.0));
  CHECK(d.block(0).rank == 2);
  CHECK(d.block(1).eigenvalue == doctest::Approx(2.0));
  CHECK(d.block(1).rank == 1);

  const auto id = spectral_decompose(ComplexMatrix::Identity(3, 3));
  REQUIRE(id.size() == 1);
  CHECK(max_abs(id.projector(0) - ComplexMatrix::Identity(3, 3)) < 1e-12);

  Rng rng(3);
  const auto o = random_hermitian(5, rng);
  const auto r = spectral_decompose(o);
  CHECK(r.size() == 5);
  CHECK(trace_distance(r.observable(), o) <= 1e-9);
}

TEST_CASE("spectral decomposition recovers a constructed block structure") {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const std::vector<Eigen::Index> ranks{2, 1, 3};
    const auto pvm = random_pvm(6, ranks, rng);
    const auto again = spectral_decompose(pvm.observable());
    REQUIRE(again.size() == pvm.size());
    for (std::size_t i = 0; i < pvm.size(); ++i) {
      CHECK(again.block(i).rank == pvm.block(i).rank);
      CHECK(std::abs(again.block(i).eigenvalue - pvm.block(i).eigenvalue) < 1e-8);
      CHECK(max_abs(again.projector(i) - pvm.projector(i)) < 1e-8);
    }
  }
}

TEST_CASE("random density sampling") {
  const auto a = random_density(4, 4, 99);
  const auto b = random_density(4, 4, 99);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.eig().eigenvalues.minCoeff() > 0.0);

  const auto low = random_density(4, 2, 11);
  const auto ev = hermitian_eig(low.matrix()).eigenvalues;
  CHECK((ev.array() > 1e-10).count() == 2);

  CHECK_THROWS_AS(random_density(3, 0, 1), InvalidRank);
  CHECK_THROWS_AS(random_density(3, 4, 1), InvalidRank);
}

TEST_CASE("random PVM sampling") {
  const std::vector<Eigen::Index> whole{4};
  const auto one = random_pvm(4, whole, 1);
  CHECK(max_abs(one.projector(0) - ComplexMatrix::Identity(4, 4)) < 1e-12);

  const std::vector<Eigen::Index> rank_one(5, 1);
  const auto fine = random_pvm(5, rank_one, 2);
  ComplexMatrix total = ComplexMatrix::Zero(5, 5);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    CHECK(fine.block(i).rank == 1);
    total += fine.projector(i);
  }
  CHECK(max_abs(total - ComplexMatrix::Identity(5, 5)) < 1e-12);

  const std::vector<Eigen::Index> halves{2, 2};
  const auto pvm = random_pvm(4, halves, 5);
  CHECK(max_abs(pvm.projector(0) * pvm.projector(1)) < 1e-10);
  CHECK(std::abs(pvm.projector(0).trace().real() - 2.0) < 1e-12);

  const std::vector<Eigen::Index> bad{2, 1};
  CHECK_THROWS_AS(random_pvm(4, bad, 1), InvalidBlockRanks);
}

TEST_CASE("projective decomposition validation") {
  std::vector<SpectralBlock> overlapping{{1.0, diag({1, 1}), 0}, {2.0, diag({0, 1}), 0}};
  CHECK_THROWS_AS(ProjectiveDecomposition{overlapping}, InvalidDecomposition);
  std::vector<SpectralBlock> incomplete{{1.0, diag({1, 0, 0}), 0}, {2.0, diag({0, 1, 0}), 0}};
  CHECK_THROWS_AS(ProjectiveDecomposition{incomplete}, InvalidDecomposition);
  std::vector<SpectralBlock> not_projector{{1.0, diag({0.5, 0}), 0}, {2.0, diag({0.5, 1}), 0}};
  CHECK_THROWS_AS(ProjectiveDecomposition{not_projector}, InvalidDecomposition);
}

TEST_CASE("block traces") {
  const std::vector<Eigen::Index> ranks{1, 2, 1};
  const auto pvm = random_pvm(4, ranks, 8);
  const auto mixed = block_trace(DensityOperator::maximally_mixed(4), pvm);
  CHECK(mixed[0] == doctest::Approx(0.25));
  CHECK(mixed[1] == doctest::Approx(0.5));
  CHECK(mixed[2] == doctest::Approx(0.25));

  const std::vector<Eigen::Index> coords{1, 1, 1};
  const auto z = block_trace(diag_state({1, 0, 0}), ProjectiveDecomposition::coordinate(coords));
  CHECK(z == std::vector<double>{1.0, 0.0, 0.0});

  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(200 + static_cast<std::uint64_t>(seed));
    const auto rho = random_density(4, 1 + seed % 4, rng);
    const auto p = random_pvm(4, ranks, rng);
    const auto w = block_trace(rho, p);
    double s = 0.0;
    for (double v : w) s += v;
    CHECK(std::abs(s - 1.0) < 1e-10);

    const auto pinched = p.pinch(rho.matrix());
    CHECK(std::abs(pinched.trace().real() - 1.0) < 1e-12);
    CHECK(is_psd(pinched));

    // Conjugating both arguments by one unitary leaves the traces unchanged.
    const auto u = random_unitary(4, rng);
    std::vector<SpectralBlock> rotated;
    for (const auto& b : p.blocks()) rotated.push_back({b.eigenvalue, u * b.projector * u.adjoint(), 0});
    const auto w2 = block_trace(DensityOperator(hermitian_part(u * rho.matrix() * u.adjoint())),
                                ProjectiveDecomposition(rotated));
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(w[i] - w2[i]) < 1e-12);
  }
}

TEST_CASE("block probabilities") {
  CHECK_THROWS_AS(BlockProbabilities({0.5, 0.4}), NotNormalized);
  CHECK_THROWS_AS(BlockProbabilities({1.5, -0.5}), NotNormalized);
  CHECK(BlockProbabilities({0.25, 0.75}).size() == 2);
}
