#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "trispin/errors.hpp"
#include "trispin/krawtchouk.hpp"
#include "trispin/model.hpp"

using namespace trispin;
using trispin::testing::max_abs;

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& H) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> linear_spectrum(const ModelParams& p) {
  std::vector<double> out;
  for (int s = 0; s <= p.N; ++s)
    for (int t = 0; s + t <= p.N; ++t) out.push_back((p.p1 + p.p2) * s - (p.p3 + p.p4) * t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("validate_params") {
  const ModelParams p = validate_params(3, 1, 2, 3, 4);
  CHECK(p.S == 10.0);
  CHECK(p.delta == -2.0);
  CHECK_THROWS_AS(validate_params(3, 1, 2, 2, 4), DegeneracyError);
  CHECK_THROWS_AS(validate_params(3, 1, -2, 3, 4), ValidationError);
  CHECK_THROWS_AS(validate_params(3, 0, 2, 3, 4), ValidationError);
  CHECK_THROWS_AS(validate_params(3, 1, 2, 3, NAN), ValidationError);
  CHECK_THROWS_AS(validate_params(-1, 1, 2, 3, 4), ValidationError);
  // a degeneracy error is still a validation error
  CHECK_THROWS_AS(validate_params(3, 2, 3, 4, 6), ValidationError);
}

TEST_CASE("couplings boundary zeros and signs") {
  std::mt19937_64 rng(7);
  for (int N = 0; N <= 9; ++N) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const CouplingSet c = couplings(p);
    for (int a = 0; a <= N; ++a) {
      CHECK(c.I(0, a) == 0.0);
      CHECK(c.J(a, 0) == 0.0);
    }
    for (const auto& [i, j] : enumerate_sites(N)) {
      CHECK(c.I(i, j) >= 0.0);
      CHECK(c.J(i, j) <= 0.0);
    }
    CHECK(c.I(N + 1, 0) == 0.0);
    CHECK(c.J(0, N + 1) == 0.0);
    CHECK(c.B(N, 1) == 0.0);
  }
}

TEST_CASE("coupling I(1,0) at N=2, p=(1,2,3,4)") {
  // sqrt(10 * 1 * 3 * 6 * 1 * 2) / 4, evaluated separately
  const CouplingSet c = couplings(validate_params(2, 1, 2, 3, 4));
  CHECK(c.I(1, 0) == doctest::Approx(4.743416490252569).epsilon(1e-15));
}

TEST_CASE("field vanishes on the diagonal for p1=p4=1, p2=p3=3+2sqrt2") {
  const double q = 3.0 + 2.0 * std::numbers::sqrt2;
  for (int N = 1; N <= 8; ++N) {
    const CouplingSet c = couplings(validate_params(N, 1, q, q, 1));
    for (int i = 0; 2 * i <= N; ++i) CHECK(std::abs(c.B(i, i)) < 1e-12);
  }
}

TEST_CASE("one-excitation Hamiltonian small cases") {
  const ModelParams p0 = validate_params(0, 1, 2, 3, 4);
  const HamiltonianMatrix H0 = build_one_excitation_hamiltonian(p0);
  REQUIRE(H0.rows() == 1);
  CHECK(H0(0, 0) == couplings(p0).B(0, 0));

  const HamiltonianMatrix H1 = build_one_excitation_hamiltonian(validate_params(1, 1, 2, 3, 4));
  const auto ev = sorted_eigenvalues(H1);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(-7).epsilon(1e-12));
  CHECK(std::abs(ev[1]) < 1e-12);
  CHECK(ev[2] == doctest::Approx(3).epsilon(1e-12));

  const ModelParams p3 = validate_params(3, 1, 2, 3, 4);
  const auto numeric = sorted_eigenvalues(build_one_excitation_hamiltonian(p3));
  const auto analytic = linear_spectrum(p3);
  for (std::size_t k = 0; k < analytic.size(); ++k) CHECK(std::abs(numeric[k] - analytic[k]) < 1e-10);
}

TEST_CASE("Hamiltonian is exactly symmetric with nearest-neighbour sparsity") {
  std::mt19937_64 rng(11);
  for (int N = 0; N <= 10; ++N) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const HamiltonianMatrix H = build_one_excitation_hamiltonian(p);
    CHECK(max_abs(H - H.transpose()) == 0.0);
    const auto sites = enumerate_sites(N);
    for (std::size_t a = 0; a < sites.size(); ++a)
      for (std::size_t b = 0; b < sites.size(); ++b) {
        const int dist = std::abs(sites[a].i - sites[b].i) + std::abs(sites[a].j - sites[b].j);
        if (dist > 1) REQUIRE(H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) == 0.0);
      }
  }
}

TEST_CASE("spectrum is linear in (s,t) for random parameters, N <= 15") {
  std::mt19937_64 rng(2024);
  for (int N = 1; N <= 15; ++N) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const auto numeric = sorted_eigenvalues(build_one_excitation_hamiltonian(p));
    const auto analytic = linear_spectrum(p);
    const double scale = std::max(std::abs(analytic.front()), std::abs(analytic.back()));
    for (std::size_t k = 0; k < analytic.size(); ++k)
      REQUIRE(std::abs(numeric[k] - analytic[k]) <= 1e-8 * scale);
  }
}

TEST_CASE("reference chain") {
  const HamiltonianMatrix H1 = build_chain_hamiltonian_1d(1);
  CHECK(H1(0, 1) == 0.5);
  CHECK(H1(0, 0) == 0.0);
  const HamiltonianMatrix H2 = build_chain_hamiltonian_1d(2);
  CHECK(H2(0, 1) == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-15));
  CHECK(H2(1, 2) == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-15));
  CHECK_THROWS_AS(build_chain_hamiltonian_1d(0), ValidationError);

  for (int N = 1; N <= 12; ++N) {
    const auto ev = sorted_eigenvalues(build_chain_hamiltonian_1d(N));
    for (int s = 0; s <= N; ++s) REQUIRE(std::abs(ev[s] - (s - N / 2.0)) < 1e-10);
  }
}

TEST_CASE("full Hilbert space oracle") {
  std::mt19937_64 rng(5);
  for (int N = 0; N <= 3; ++N) {
    const ModelParams p = trispin::testing::random_params(rng, N);
    const std::size_t sites = triangle_size(N);
    const Eigen::MatrixXd full = build_full_hamiltonian(p);
    REQUIRE(full.rows() == (Eigen::Index{1} << sites));
    CHECK(max_abs(full - full.transpose()) < 1e-14);
    const Eigen::MatrixXd sz = total_sigma_z(sites);
    CHECK(max_abs(full * sz - sz * full) < 1e-12);
    CHECK(max_abs(one_excitation_block(full, sites) - build_one_excitation_hamiltonian(p)) < 1e-12);
  }
  // the vacuum (all spins down) has zero energy with the (sigma^z + 1)/2 field term
  const Eigen::MatrixXd full = build_full_hamiltonian(validate_params(1, 1, 2, 3, 4));
  CHECK(std::abs(full(7, 7)) < 1e-15);
  CHECK_THROWS_AS(build_full_hamiltonian(validate_params(4, 1, 2, 3, 4)), SizeError);
}
