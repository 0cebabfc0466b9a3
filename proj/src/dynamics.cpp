#include "trispin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trispin/errors.hpp"
#include "trispin/parallel.hpp"

namespace trispin {

namespace {

constexpr double kRestrictionTolerance = 1e-12;
constexpr double kRootTolerance = 1e-10;
constexpr double kGapTolerance = 1e-9;

// z^e by repeated multiplication; std::pow(complex, int) goes through log and gives NaN at 0
Complex ipow(Complex z, int e) {
  Complex out(1.0, 0.0);
  for (int k = 0; k < e; ++k) out *= z;
  return out;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void require_restriction(const ModelParams& p) {
  if (!close_rel(p.p1, p.p4, kRestrictionTolerance) ||
      !close_rel(p.p2, p.p3, kRestrictionTolerance))
    throw RestrictionError("closed form requires p1 == p4 and p2 == p3");
}

}  // namespace

double AmplitudeTable::total_probability() const {
  double total = 0;
  for (double p : probabilities) total += p;
  return total;
}

double PstParams::revival_time() const { return std::numbers::pi / (p1 + p2); }

ModelParams PstParams::model(int N) const { return validate_params(N, p1, p2, p2, p1); }

PstParams make_pst_params(double p1, PstRoot root) {
  if (!std::isfinite(p1) || p1 <= 0.0)
    throw ValidationError("p1 must be positive and finite, got " + std::to_string(p1));
  const double ratio = root == PstRoot::plus ? 3.0 + 2.0 * std::numbers::sqrt2
                                             : 3.0 - 2.0 * std::numbers::sqrt2;
  return {p1, p1 * ratio};
}

PstParams checked_pst_params(double p1, double p2) {
  if (!(p1 > 0.0) || !(p2 > 0.0) || !std::isfinite(p1) || !std::isfinite(p2))
    throw ValidationError("p1 and p2 must be positive and finite");
  const double lhs = (p1 + p2) * (p1 + p2);
  if (std::abs(lhs - 8.0 * p1 * p2) > kRootTolerance * lhs)
    throw RestrictionError("(p1+p2)^2 must equal 8 p1 p2 for the transfer regime");
  return {p1, p2};
}

Complex amplitude_spectral(const EigenSystem& eig, SiteIndex from, SiteIndex to, double T) {
  const auto a = static_cast<Eigen::Index>(eig.lattice.index(from));
  const auto b = static_cast<Eigen::Index>(eig.lattice.index(to));
  Complex sum = 0;
  for (Eigen::Index c = 0; c < eig.W.cols(); ++c)
    sum += eig.W(a, c) * eig.W(b, c) * std::polar(1.0, -T * eig.eigenvalues(c));
  return sum;
}

Complex amplitude_spectral(const ModelParams& params, SiteIndex from, SiteIndex to, double T) {
  return amplitude_spectral(build_eigensystem(params), from, to, T);
}

Eigen::MatrixXcd spectral_propagator(const EigenSystem& eig, double T) {
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index c = 0; c < phases.size(); ++c)
    phases(c) = std::polar(1.0, -T * eig.eigenvalues(c));
  const Eigen::MatrixXcd W = eig.W.cast<Complex>();
  return W * phases.asDiagonal() * W.transpose();
}

AmplitudeTable amplitude_table(const EigenSystem& eig, SiteIndex from, double T) {
  AmplitudeTable table;
  table.T = T;
  table.from = from;
  table.lattice = eig.lattice;
  const auto a = static_cast<Eigen::Index>(eig.lattice.index(from));
  Eigen::VectorXcd weighted(eig.W.cols());
  for (Eigen::Index c = 0; c < eig.W.cols(); ++c)
    weighted(c) = eig.W(a, c) * std::polar(1.0, -T * eig.eigenvalues(c));
  const Eigen::VectorXcd f = eig.W.cast<Complex>() * weighted;
  table.amplitudes.assign(f.data(), f.data() + f.size());
  table.probabilities.resize(table.amplitudes.size());
  std::transform(table.amplitudes.begin(), table.amplitudes.end(), table.probabilities.begin(),
                 [](Complex z) { return std::norm(z); });
  return table;
}

Eigen::MatrixXcd numeric_propagator(const Eigen::MatrixXd& H, double T) {
  if (static_cast<std::size_t>(H.rows()) > kMaxOracleDim)
    throw SizeError("numeric propagator limited to dimension " + std::to_string(kMaxOracleDim));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
  Eigen::VectorXcd phases(H.rows());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::polar(1.0, -T * solver.eigenvalues()(k));
  const Eigen::MatrixXcd V = solver.eigenvectors().cast<Complex>();
  return V * phases.asDiagonal() * V.transpose();
}

Eigen::MatrixXcd amplitude_numeric_oracle(const ModelParams& params, double T) {
  if (triangle_size(params.N) > kMaxOracleDim)
    throw SizeError("numeric oracle limited to dimension " + std::to_string(kMaxOracleDim));
  return numeric_propagator(build_one_excitation_hamiltonian(params), T);
}

Complex apex_amplitude_closed(const ModelParams& params, int i, int j, double T) {
  require_restriction(params);
  if (!in_triangle({i, j}, params.N))
    throw DomainError("site (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside triangle of order " + std::to_string(params.N));
  const int N = params.N;
  const double p1 = params.p1;
  const double p2 = params.p2;
  const double sum = p1 + p2;
  const Complex z = std::polar(1.0, -T * sum);
  const Complex one(1.0, 0.0);
  const Complex bracket = 2.0 * p1 * p2 * (z - one) * (z - one) + sum * sum * z;

  const Complex numerator = ipow(bracket, N - i - j) * ipow(z - one, i + j) *
                            ipow(p2 * z + p1, i) * ipow(p1 * z + p2, j) *
                            std::pow(p1 - p2, i) * std::pow(p2 - p1, j);
  // (p1+p2)^{2N} and sqrt(r) can leave the double range separately; combine in log space
  const double log_scale = -0.5 * log_weight_r(i, j, params) - 2.0 * N * std::log(sum);
  return numerator / ipow(z, N) * std::exp(log_scale);
}

double log_binomial_half(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
         n * std::numbers::ln2;
}

PstDistribution pst_distribution(const PstParams& pst, int N) {
  const PstParams checked = checked_pst_params(pst.p1, pst.p2);
  const EigenSystem eig = build_eigensystem(checked.model(N));
  const AmplitudeTable table = amplitude_table(eig, {0, 0}, checked.revival_time());

  PstDistribution out;
  out.sites = eig.lattice.hypotenuse();
  for (const SiteIndex& site : out.sites) {
    const double p = table.probability(site);
    const double reference = std::exp(log_binomial_half(N, site.i));
    out.probability.push_back(p);
    out.binomial.push_back(reference);
    out.max_deviation = std::max(out.max_deviation, std::abs(p - reference));
    out.total += p;
  }
  for (const SiteIndex& site : eig.lattice.sites())
    if (site.i + site.j < N)
      out.off_hypotenuse_max = std::max(out.off_hypotenuse_max, table.probability(site));
  return out;
}

double light_cone_check(const PstParams& pst, int N) {
  const PstParams checked = checked_pst_params(pst.p1, pst.p2);
  const EigenSystem eig = build_eigensystem(checked.model(N));
  const Eigen::MatrixXcd U = spectral_propagator(eig, checked.revival_time());
  double worst = 0;
  const auto& sites = eig.lattice.sites();
  for (std::size_t a = 0; a < sites.size(); ++a)
    for (std::size_t b = 0; b < sites.size(); ++b)
      if (sites[a].i + sites[a].j + sites[b].i + sites[b].j < N)
        worst = std::max(worst, std::abs(U(static_cast<Eigen::Index>(a),
                                           static_cast<Eigen::Index>(b))));
  return worst;
}

PstConditionResult pst_condition_check(std::span<const double> spectrum, double T) {
  if (spectrum.size() < 2)
    throw DegenerateInputError("transfer condition needs at least two levels");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("transfer time must be positive");
  if (!std::is_sorted(spectrum.begin(), spectrum.end()))
    throw DomainError("spectrum must be sorted ascending");

  PstConditionResult out;
  out.satisfied = true;
  for (std::size_t s = 0; s + 1 < spectrum.size(); ++s) {
    const double q = (spectrum[s + 1] - spectrum[s]) * T / std::numbers::pi;
    const auto m = static_cast<long long>(std::llround(q));
    out.multipliers.push_back(m);
    const bool integral = std::abs(q - static_cast<double>(m)) <=
                          kGapTolerance * std::max(1.0, std::abs(q));
    if (!integral || m <= 0 || m % 2 == 0) out.satisfied = false;
  }
  return out;
}

double chain_pst_fidelity(int N) {
  const Eigen::MatrixXcd U = numeric_propagator(build_chain_hamiltonian_1d(N), std::numbers::pi);
  return std::abs(U(N, 0));
}

std::vector<ScanPoint> fidelity_scan(const EigenSystem& eig, SiteIndex from, SiteIndex to,
                                     std::span<const double> grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw DomainError("time grid contains a nonfinite value");
    if (k > 0 && grid[k] < grid[k - 1]) throw DomainError("time grid must be ascending");
  }
  // domain checks
  (void)eig.lattice.index(from);
  (void)eig.lattice.index(to);
  std::vector<ScanPoint> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    out[k] = {grid[k], std::norm(amplitude_spectral(eig, from, to, grid[k]))};
  });
  return out;
}

}  // namespace trispin
