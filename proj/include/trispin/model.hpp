#pragma once

#include <Eigen/Dense>

#include "trispin/lattice.hpp"

namespace trispin {

/// Lattice order N and the four positive real parameters of the model.
///
/// Construct through validate_params(); a default-constructed value is not
/// meaningful. `S` caches p1 + p2 + p3 + p4 and `delta` caches p1 p4 - p2 p3.
struct ModelParams {
  int N = 0;
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  double S = 0;
  double delta = 0;
};

/// Checks p_k > 0 and p1 p4 != p2 p3, then fills the derived fields.
///
/// Throws ValidationError for nonpositive or nonfinite parameters or N < 0,
/// DegeneracyError when p1 p4 equals p2 p3 to within a few ulps.
ModelParams validate_params(int N, double p1, double p2, double p3, double p4);

/// Couplings and on-site fields over the triangle.
///
/// I(i,j) couples (i-1,j) with (i,j); J(i,j) couples (i,j-1) with (i,j);
/// B(i,j) is the field on (i,j). Lookups outside the triangle, or with
/// i = 0 for I and j = 0 for J, return 0.
class CouplingSet {
public:
  CouplingSet() = default;
  CouplingSet(TriangularLattice lattice, std::vector<double> horizontal,
              std::vector<double> vertical, std::vector<double> field);

  const TriangularLattice& lattice() const { return lattice_; }
  double I(int i, int j) const;
  double J(int i, int j) const;
  double B(int i, int j) const;

private:
  double lookup(const std::vector<double>& values, int i, int j) const;

  TriangularLattice lattice_{0};
  std::vector<double> horizontal_;
  std::vector<double> vertical_;
  std::vector<double> field_;
};

CouplingSet couplings(const ModelParams& params);

/// Dense real symmetric matrix; rows and columns follow enumerate_sites().
using HamiltonianMatrix = Eigen::MatrixXd;

/// One-excitation Hamiltonian of the triangular lattice.
HamiltonianMatrix build_one_excitation_hamiltonian(const ModelParams& params);

/// One-excitation Hamiltonian of the (N+1)-site chain with J_l = sqrt(l (N+1-l)) / 2.
HamiltonianMatrix build_chain_hamiltonian_1d(int N);

/// Largest number of sites accepted by build_full_hamiltonian.
inline constexpr std::size_t kMaxFullHilbertSites = 10;

/// Full 2^dim spin-1/2 Hamiltonian assembled from Pauli operators.
///
/// Tensor factor k (most significant) is site k of enumerate_sites(); local
/// state 0 is spin up. Intended as an oracle only: throws SizeError above
/// kMaxFullHilbertSites sites.
Eigen::MatrixXd build_full_hamiltonian(const ModelParams& params);

/// Sum over sites of sigma^z, in the same basis as build_full_hamiltonian.
Eigen::MatrixXd total_sigma_z(std::size_t sites);

/// Extracts the block of states with exactly one spin up, ordered by site index.
Eigen::MatrixXd one_excitation_block(const Eigen::MatrixXd& full, std::size_t sites);

}  // namespace trispin
