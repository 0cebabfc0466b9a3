#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "trispin/krawtchouk.hpp"
#include "trispin/lattice.hpp"
#include "trispin/model.hpp"

namespace trispin {

using Complex = std::complex<double>;

/// Amplitudes f_{from,to}(T) for every target site, with |f|^2 alongside.
struct AmplitudeTable {
  double T = 0;
  SiteIndex from;
  TriangularLattice lattice{0};
  std::vector<Complex> amplitudes;  ///< indexed by site_index
  std::vector<double> probabilities;

  Complex amplitude(SiteIndex to) const { return amplitudes.at(lattice.index(to)); }
  double probability(SiteIndex to) const { return probabilities.at(lattice.index(to)); }
  double total_probability() const;
};

/// Which root of (p1+p2)^2 = 8 p1 p2 is used: p2 = p1 (3 + 2 sqrt 2) or p1 (3 - 2 sqrt 2).
enum class PstRoot { plus, minus };

/// Parameters of the transfer regime: p1 = p4, p2 = p3 and (p1+p2)^2 = 8 p1 p2.
struct PstParams {
  double p1 = 0;
  double p2 = 0;

  /// pi / (p1 + p2); the apex state spreads over the hypotenuse at this time.
  double revival_time() const;
  /// Model parameters (N, p1, p2, p2, p1).
  ModelParams model(int N) const;
};

/// p2 computed from p1 and the root. Throws ValidationError for p1 <= 0.
PstParams make_pst_params(double p1, PstRoot root);

/// Accepts an explicit (p1, p2) pair; throws RestrictionError unless
/// (p1+p2)^2 = 8 p1 p2 holds to 1e-10 relative.
PstParams checked_pst_params(double p1, double p2);

/// f_{from,to}(T) = sum_{s,t} W_from(s,t) W_to(s,t) exp(-i T x_{s,t}).
Complex amplitude_spectral(const EigenSystem& eig, SiteIndex from, SiteIndex to, double T);
Complex amplitude_spectral(const ModelParams& params, SiteIndex from, SiteIndex to, double T);

/// Whole propagator exp(-i T H) assembled from the analytic eigenbasis.
Eigen::MatrixXcd spectral_propagator(const EigenSystem& eig, double T);

AmplitudeTable amplitude_table(const EigenSystem& eig, SiteIndex from, double T);

/// Size limit of the dense numeric propagator.
inline constexpr std::size_t kMaxOracleDim = 5000;

/// exp(-i T H) for a real symmetric H via a numeric eigendecomposition.
Eigen::MatrixXcd numeric_propagator(const Eigen::MatrixXd& H, double T);

/// Numeric propagator of the one-excitation Hamiltonian. It does not touch
/// the analytic eigenbasis. Throws SizeError above kMaxOracleDim.
Eigen::MatrixXcd amplitude_numeric_oracle(const ModelParams& params, double T);

/// Closed form of f_{(0,0),(i,j)}(T) under p1 = p4, p2 = p3, with z = exp(-i T (p1+p2)):
///
///   [2 p1 p2 (z-1)^2 + (p1+p2)^2 z]^{N-i-j} (p1-p2)^i (p2-p1)^j (z-1)^{i+j}
///   (p2 z + p1)^i (p1 z + p2)^j / (sqrt(r_{i,j}) z^N (p1+p2)^{2N})
///
/// Throws RestrictionError when the parameter restriction does not hold.
Complex apex_amplitude_closed(const ModelParams& params, int i, int j, double T);

/// Apex-initiated probabilities on the hypotenuse at the revival time.
struct PstDistribution {
  std::vector<SiteIndex> sites;      ///< (k, N-k), k = 0..N
  std::vector<double> probability;   ///< |f_{(0,0),(k,N-k)}|^2
  std::vector<double> binomial;      ///< 2^{-N} C(N, k)
  double max_deviation = 0;          ///< max_k |probability - binomial|
  double total = 0;                  ///< sum of probability
  double off_hypotenuse_max = 0;     ///< largest probability on a site with i + j < N
};

PstDistribution pst_distribution(const PstParams& pst, int N);

/// Largest |f_{(i,j),(k,l)}| at the revival time over pairs with i + j + k + l < N
/// (0 when no such pair exists).
double light_cone_check(const PstParams& pst, int N);

struct PstConditionResult {
  bool satisfied = false;
  std::vector<long long> multipliers;  ///< M_s = round(gap_s T / pi)
};

/// Tests x_{s+1} - x_s = (pi / T) M_s with every M_s a positive odd integer,
/// to 1e-9 relative. Throws DegenerateInputError for fewer than two levels and
/// DomainError when the spectrum is unsorted or T <= 0.
PstConditionResult pst_condition_check(std::span<const double> spectrum, double T);

/// |<N| exp(-i pi H_chain) |0>| for the (N+1)-site reference chain.
double chain_pst_fidelity(int N);

struct ScanPoint {
  double t = 0;
  double probability = 0;
};

/// |f_{from,to}(t)|^2 on each grid point. The grid must be finite and ascending.
std::vector<ScanPoint> fidelity_scan(const EigenSystem& eig, SiteIndex from, SiteIndex to,
                                     std::span<const double> grid);

/// log(C(n, k)) - n log 2.
double log_binomial_half(int n, int k);

}  // namespace trispin
