#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "test_support.hpp"
#include "trispin/errors.hpp"
#include "trispin/krawtchouk.hpp"
#include "trispin/parallel.hpp"

using namespace trispin;
using trispin::testing::max_abs;

TEST_CASE("krawtchouk_params for p=(1,2,3,4)") {
  const KrawtchoukParams k = krawtchouk_params(validate_params(2, 1, 2, 3, 4));
  CHECK(k.u1 == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(k.u2 == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(k.v1 == doctest::Approx(28.0 / 30.0).epsilon(1e-15));
  CHECK(k.v2 == doctest::Approx(1.05).epsilon(1e-15));
}

TEST_CASE("eigenvalue") {
  const ModelParams p = validate_params(3, 1, 2, 3, 4);
  CHECK(eigenvalue(0, 0, p) == 0.0);
  CHECK(eigenvalue(1, 0, p) == 3.0);
  CHECK(eigenvalue(0, 1, p) == -7.0);
  CHECK_THROWS_AS(eigenvalue(2, 2, p), DomainError);
  CHECK_THROWS_AS(eigenvalue(-1, 0, p), DomainError);
}

TEST_CASE("weight_r") {
  const ModelParams p = validate_params(2, 1, 2, 3, 4);
  CHECK(weight_r(0, 0, p) == doctest::Approx(1.0).epsilon(1e-15));

  // plain product: delta^2 / S / (p1 p3 (p2+p4)) / trinomial(2;1,0) = 4 / 10 / 18 / 2
  const double product = (-2.0) * (-2.0) / 10.0 / (1.0 * 3.0 * 6.0) / 2.0;
  CHECK(product == doctest::Approx(1.0 / 90.0).epsilon(1e-15));
  CHECK(weight_r(1, 0, p) == doctest::Approx(product).epsilon(1e-13));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const ModelParams q = trispin::testing::random_params(rng, 10);
    for (const auto& [i, j] : enumerate_sites(10)) {
      REQUIRE(weight_r(i, j, q) > 0.0);
      REQUIRE(std::isfinite(weight_r(i, j, q)));
    }
  }
  CHECK_THROWS_AS(weight_r(2, 1, p), DomainError);
}

TEST_CASE("explicit Krawtchouk sum boundary values") {
  std::mt19937_64 rng(3);
  for (int N = 0; N <= 8; ++N) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const KrawtchoukEvaluator K(p);
    for (const auto& [a, b] : enumerate_sites(N)) {
      CHECK(K(0, 0, a, b) == 1.0);
      CHECK(K(a, b, 0, 0) == 1.0);
    }
  }
}

TEST_CASE("K_{1,0}(1,0) at N=2 matches the numeric eigenvector") {
  // K = W(1,0) * rho(1,0) / W(0,0) from a numeric eigenvector of H for x = 3
  const ModelParams p = validate_params(2, 1, 2, 3, 4);
  CHECK(krawtchouk_explicit(1, 0, 1, 0, p) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK_THROWS_AS(krawtchouk_explicit(2, 1, 0, 0, p), DomainError);
  CHECK_THROWS_AS(krawtchouk_explicit(0, 0, 3, 0, p), DomainError);
}

TEST_CASE("recurrence residual") {
  const ModelParams p1 = validate_params(1, 1, 2, 3, 4);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
  CHECK(recurrence_residual(p1, 0, 0, ones).max_abs == 0.0);
  CHECK_THROWS_AS(recurrence_residual(p1, 0, 0, Eigen::VectorXd::Ones(2)), DomainError);

  const ModelParams p5 = validate_params(5, 1, 2, 3, 4);
  const Eigen::MatrixXd table = krawtchouk_table(p5);
  const TriangularLattice lattice(5);
  for (std::size_t c = 0; c < lattice.dim(); ++c) {
    const auto [s, t] = lattice.site(c);
    const RecurrenceResidual r = recurrence_residual(p5, s, t, table.col(static_cast<Eigen::Index>(c)));
    CHECK(r.relative() < 1e-9);
  }

  // a wrong table is detected
  Eigen::VectorXd broken = table.col(4);
  broken(2) += 0.1;
  const auto [s, t] = lattice.site(4);
  CHECK(recurrence_residual(p5, s, t, broken).relative() > 1e-6);
}

TEST_CASE("w00") {
  CHECK(w00(0, 0, validate_params(0, 1, 2, 3, 4)) == doctest::Approx(1.0).epsilon(1e-15));
  const ModelParams p = validate_params(6, 1, 2, 3, 4);
  double total = 0;
  for (const auto& [s, t] : enumerate_sites(6)) {
    const double w = w00(s, t, p);
    CHECK(w > 0.0);
    total += w * w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigensystem small cases") {
  const EigenSystem e0 = build_eigensystem(validate_params(0, 1, 2, 3, 4));
  REQUIRE(e0.W.rows() == 1);
  CHECK(e0.W(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e0.eigenvalues(0) == 0.0);

  const ModelParams p = validate_params(3, 1, 2, 3, 4);
  const EigenSystem es = build_eigensystem(p);
  const auto D = es.W.rows();
  CHECK(max_abs(es.W.transpose() * es.W - Eigen::MatrixXd::Identity(D, D)) < 1e-10);
  const HamiltonianMatrix H = build_one_excitation_hamiltonian(p);
  CHECK(max_abs(H * es.W - es.W * es.eigenvalues.asDiagonal()) < 1e-9);
  CHECK(es.eigenvalue(1, 0) == 3.0);
}

TEST_CASE("eigensystem orthogonality and eigen-relation for random parameters") {
  std::mt19937_64 rng(31337);
  for (int N : {1, 2, 4, 7, 10, 13, 16, 20}) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const EigenSystem es = build_eigensystem(p);
    const auto D = es.W.rows();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(D, D);
    CHECK(max_abs(es.W.transpose() * es.W - I) < 1e-9);
    CHECK(max_abs(es.W * es.W.transpose() - I) < 1e-9);
    const HamiltonianMatrix H = build_one_excitation_hamiltonian(p);
    CHECK(max_abs(H * es.W - es.W * es.eigenvalues.asDiagonal()) < 1e-8 * max_abs(H));
  }
}

TEST_CASE("analytic columns match numeric eigenvectors up to sign") {
  std::mt19937_64 rng(8);
  for (int N : {2, 5, 8}) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const EigenSystem es = build_eigensystem(p);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_one_excitation_hamiltonian(p));
    const Eigen::VectorXd& ev = solver.eigenvalues();
    for (Eigen::Index c = 0; c < es.W.cols(); ++c) {
      const double x = es.eigenvalues(c);
      Eigen::Index match = 0;
      (ev.array() - x).abs().minCoeff(&match);
      // skip (near-)degenerate levels
      bool simple = true;
      for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (k != match && std::abs(ev(k) - x) < 1e-6) simple = false;
      if (!simple) continue;
      const Eigen::VectorXd v = solver.eigenvectors().col(match);
      const double sign = v.dot(es.W.col(c)) < 0 ? -1.0 : 1.0;
      CHECK(max_abs(sign * v - es.W.col(c)) < 1e-8);
    }
  }
}

TEST_CASE("near-degenerate parameters") {
  // delta / (p1 p4) around 1e-2 and 1e-13; both resolved by the wider tiers
  const std::pair<double, double> cases[] = {{2.1, 4.21}, {2.0, 4.0 * (1 + 1e-13)}};
  for (const auto& [p3, p4] : cases) {
    const EigenSystem es = build_eigensystem(validate_params(12, 1.0, 2.0, p3, p4));
    const auto D = es.W.rows();
    CHECK(max_abs(es.W.transpose() * es.W - Eigen::MatrixXd::Identity(D, D)) < 1e-9);
  }

  // beyond the widest tier the build refuses instead of returning a wrong basis
  const ModelParams hopeless = validate_params(16, 1.0, 2.0, 2.0, 4.0 * (1 + 1e-13));
  CHECK_THROWS_AS(build_eigensystem(hopeless), PrecisionError);
}

TEST_CASE("threaded build matches the serial one") {
  const ModelParams p = validate_params(9, 0.7, 1.9, 2.6, 1.1);
  ::unsetenv(kThreadsEnvVar);
  const EigenSystem serial = build_eigensystem(p);
  ::setenv(kThreadsEnvVar, "4", 1);
  const EigenSystem threaded = build_eigensystem(p);
  CHECK(threaded.W == serial.W);
  ::setenv(kThreadsEnvVar, "zero", 1);
  CHECK_THROWS_AS(build_eigensystem(p), ValidationError);
  ::unsetenv(kThreadsEnvVar);
}
