#include "trispin/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "trispin/dynamics.hpp"
#include "trispin/krawtchouk.hpp"
#include "trispin/lattice.hpp"
#include "trispin/model.hpp"

namespace trispin {

namespace {

ModelParams random_params(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> dist(0.2, 4.0);
  while (true) {
    const double p1 = dist(rng), p2 = dist(rng), p3 = dist(rng), p4 = dist(rng);
    // keep away from the degenerate surface p1 p4 = p2 p3
    if (std::abs(p1 * p4 - p2 * p3) > 0.1 * (p1 * p4 + p2 * p3))
      return validate_params(N, p1, p2, p3, p4);
  }
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

SelfTestResult check(std::string name, double value, double tolerance) {
  return {std::move(name), value <= tolerance, value, tolerance};
}

}  // namespace

std::vector<SelfTestResult> run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::vector<SelfTestResult> out;

  {
    double bad = 0;
    for (int N = 0; N <= 50; ++N) {
      const auto sites = enumerate_sites(N);
      if (sites.size() != triangle_size(N)) bad = 1;
      for (std::size_t k = 0; k < sites.size(); ++k)
        if (site_index(sites[k], N) != k) bad = 1;
    }
    out.push_back(check("lattice_index_roundtrip", bad, 0.0));
  }

  {
    double asym = 0, spectrum = 0;
    for (int N = 1; N <= 8; ++N) {
      const ModelParams p = random_params(rng, N);
      const HamiltonianMatrix H = build_one_excitation_hamiltonian(p);
      asym = std::max(asym, max_abs(H - H.transpose()));
      Eigen::VectorXd numeric = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues();
      std::vector<double> analytic;
      for (const auto& [s, t] : enumerate_sites(N)) analytic.push_back(eigenvalue(s, t, p));
      std::sort(analytic.begin(), analytic.end());
      const double scale = std::max(std::abs(analytic.front()), std::abs(analytic.back()));
      for (std::size_t k = 0; k < analytic.size(); ++k)
        spectrum = std::max(spectrum, std::abs(numeric(static_cast<Eigen::Index>(k)) - analytic[k]) / scale);
    }
    out.push_back(check("hamiltonian_symmetry", asym, 0.0));
    out.push_back(check("spectrum_linear", spectrum, 1e-8));
  }

  {
    double commutator = 0, block = 0;
    for (int N = 0; N <= 2; ++N) {
      const ModelParams p = random_params(rng, N);
      const std::size_t sites = triangle_size(N);
      const Eigen::MatrixXd full = build_full_hamiltonian(p);
      const Eigen::MatrixXd sz = total_sigma_z(sites);
      commutator = std::max(commutator, max_abs(full * sz - sz * full));
      block = std::max(block, max_abs(one_excitation_block(full, sites) -
                                      build_one_excitation_hamiltonian(p)));
    }
    out.push_back(check("full_space_sigma_z_commutes", commutator, 1e-12));
    out.push_back(check("full_space_sector_block", block, 1e-12));
  }

  {
    double spectrum = 0;
    for (int N = 1; N <= 12; ++N) {
      const Eigen::VectorXd ev =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_chain_hamiltonian_1d(N)).eigenvalues();
      for (int s = 0; s <= N; ++s) spectrum = std::max(spectrum, std::abs(ev(s) - (s - N / 2.0)));
    }
    out.push_back(check("chain_spectrum_linear", spectrum, 1e-10));
  }

  {
    double orth = 0, eig_rel = 0, recurrence = 0;
    for (int N = 1; N <= 8; ++N) {
      const ModelParams p = random_params(rng, N);
      const EigenSystem es = build_eigensystem(p);
      const auto D = es.W.rows();
      orth = std::max(orth, max_abs(es.W.transpose() * es.W - Eigen::MatrixXd::Identity(D, D)));
      const HamiltonianMatrix H = build_one_excitation_hamiltonian(p);
      eig_rel = std::max(eig_rel, max_abs(H * es.W - es.W * es.eigenvalues.asDiagonal()) / max_abs(H));
      const Eigen::MatrixXd K = krawtchouk_table(p);
      for (std::size_t c = 0; c < es.lattice.dim(); ++c) {
        const auto [s, t] = es.lattice.site(c);
        recurrence = std::max(
            recurrence, recurrence_residual(p, s, t, K.col(static_cast<Eigen::Index>(c))).relative());
      }
    }
    out.push_back(check("eigenbasis_orthogonal", orth, 1e-9));
    out.push_back(check("eigenbasis_diagonalizes", eig_rel, 1e-8));
    out.push_back(check("krawtchouk_recurrence", recurrence, 1e-9));
  }

  {
    double agree = 0, unitary = 0, apex = 0;
    for (int N = 1; N <= 6; ++N) {
      const ModelParams p = random_params(rng, N);
      const EigenSystem es = build_eigensystem(p);
      const double T = time(rng);
      const Eigen::MatrixXcd U = amplitude_numeric_oracle(p, T);
      agree = std::max(agree, max_abs(spectral_propagator(es, T) - U));
      unitary = std::max(unitary, max_abs(U * U.adjoint() - Eigen::MatrixXcd::Identity(U.rows(), U.cols())));

      std::uniform_real_distribution<double> dist(0.2, 4.0);
      const double a = dist(rng), b = dist(rng) + 0.3;
      const ModelParams r = validate_params(N, a, b, b, a);
      const EigenSystem er = build_eigensystem(r);
      for (const SiteIndex& site : er.lattice.sites())
        apex = std::max(apex, std::abs(std::abs(apex_amplitude_closed(r, site.i, site.j, T)) -
                                       std::abs(amplitude_spectral(er, {0, 0}, site, T))));
    }
    out.push_back(check("spectral_matches_numeric_propagator", agree, 1e-9));
    out.push_back(check("propagator_unitary", unitary, 1e-10));
    out.push_back(check("apex_closed_form", apex, 1e-9));
  }

  {
    double binomial = 0, total = 0, cone = 0, revival = 0, couplings_err = 0;
    for (PstRoot root : {PstRoot::plus, PstRoot::minus}) {
      const PstParams pst = make_pst_params(1.0, root);
      for (int N = 1; N <= 8; ++N) {
        const PstDistribution d = pst_distribution(pst, N);
        binomial = std::max(binomial, d.max_deviation);
        total = std::max(total, std::abs(d.total - 1.0));
        cone = std::max(cone, light_cone_check(pst, N));

        const EigenSystem es = build_eigensystem(pst.model(N));
        const Eigen::MatrixXcd U = spectral_propagator(es, 2.0 * pst.revival_time());
        revival = std::max(revival, max_abs(U - U(0, 0) * Eigen::MatrixXcd::Identity(U.rows(), U.cols())));

        const CouplingSet c = couplings(pst.model(N));
        const double sum = pst.p1 + pst.p2;
        const double sign = root == PstRoot::plus ? -1.0 : 1.0;
        for (const auto& [i, j] : enumerate_sites(N)) {
          const double room = N + 1 - i - j;
          couplings_err = std::max({couplings_err,
                                    std::abs(c.I(i, j) / sum - 0.5 * std::sqrt(i * room)),
                                    std::abs(c.J(i, j) / sum + 0.5 * std::sqrt(j * room)),
                                    std::abs(c.B(i, j) / sum - sign * (j - i) / std::numbers::sqrt2),
                                    std::abs(c.I(i, j) + c.J(j, i))});
        }
      }
    }
    out.push_back(check("pst_binomial_law", binomial, 1e-8));
    out.push_back(check("pst_total_probability", total, 1e-10));
    out.push_back(check("pst_light_cone", cone, 1e-8));
    out.push_back(check("revival_identity", revival, 1e-9));
    out.push_back(check("specialized_couplings", couplings_err, 1e-10));
  }

  {
    double deficit = 0;
    bool condition = true;
    for (int N = 1; N <= 12; ++N) {
      deficit = std::max(deficit, 1.0 - chain_pst_fidelity(N));
      std::vector<double> spectrum;
      for (int s = 0; s <= N; ++s) spectrum.push_back(s - N / 2.0);
      const PstConditionResult r = pst_condition_check(spectrum, std::numbers::pi);
      condition = condition && r.satisfied &&
                  std::all_of(r.multipliers.begin(), r.multipliers.end(), [](long long m) { return m == 1; });
    }
    out.push_back(check("chain_transfer_fidelity", deficit, 1e-9));
    out.push_back(check("chain_spectral_condition", condition ? 0.0 : 1.0, 0.0));
  }
  return out;
}

}  // namespace trispin
