#include "trispin/model.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "trispin/errors.hpp"

namespace trispin {

ModelParams validate_params(int N, double p1, double p2, double p3, double p4) {
  if (N < 0) throw ValidationError("N must be nonnegative, got " + std::to_string(N));
  const double ps[] = {p1, p2, p3, p4};
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(ps[k]) || ps[k] <= 0.0)
      throw ValidationError("parameter p" + std::to_string(k + 1) +
                            " must be positive and finite, got " + std::to_string(ps[k]));
  }
  const double a = p1 * p4;
  const double b = p2 * p3;
  const double delta = a - b;
  if (std::abs(delta) <= 8 * std::numeric_limits<double>::epsilon() * (a + b))
    throw DegeneracyError("p1*p4 equals p2*p3: field formula is singular");
  return ModelParams{N, p1, p2, p3, p4, p1 + p2 + p3 + p4, delta};
}

CouplingSet::CouplingSet(TriangularLattice lattice, std::vector<double> horizontal,
                         std::vector<double> vertical, std::vector<double> field)
    : lattice_(std::move(lattice)),
      horizontal_(std::move(horizontal)),
      vertical_(std::move(vertical)),
      field_(std::move(field)) {}

double CouplingSet::lookup(const std::vector<double>& values, int i, int j) const {
  if (!lattice_.contains({i, j}) || values.empty()) return 0.0;
  return values[lattice_.index({i, j})];
}

double CouplingSet::I(int i, int j) const { return lookup(horizontal_, i, j); }
double CouplingSet::J(int i, int j) const { return lookup(vertical_, i, j); }
double CouplingSet::B(int i, int j) const { return lookup(field_, i, j); }

CouplingSet couplings(const ModelParams& params) {
  const auto& [N, p1, p2, p3, p4, S, delta] = params;
  TriangularLattice lattice(N);
  std::vector<double> horizontal(lattice.dim()), vertical(lattice.dim()), field(lattice.dim());

  const double a = p1 * p3 * (p2 + p4);  // enters I and the field
  const double b = p2 * p4 * (p1 + p3);  // enters J and the field
  const double field_bulk = S / delta * (b / (p2 + p4) - a / (p1 + p3));

  for (std::size_t k = 0; k < lattice.dim(); ++k) {
    const auto [i, j] = lattice.site(k);
    const double room = N + 1 - i - j;
    horizontal[k] = std::sqrt(S * a * i * room) / (p1 + p3);
    vertical[k] = -std::sqrt(S * b * j * room) / (p2 + p4);
    field[k] = (N - i - j) * field_bulk + j * delta / (p2 + p4) - i * delta / (p1 + p3);
  }
  return CouplingSet(std::move(lattice), std::move(horizontal), std::move(vertical),
                     std::move(field));
}

HamiltonianMatrix build_one_excitation_hamiltonian(const ModelParams& params) {
  const CouplingSet c = couplings(params);
  const TriangularLattice& lattice = c.lattice();
  const auto n = static_cast<Eigen::Index>(lattice.dim());
  HamiltonianMatrix H = HamiltonianMatrix::Zero(n, n);
  for (std::size_t k = 0; k < lattice.dim(); ++k) {
    const auto [i, j] = lattice.site(k);
    const auto row = static_cast<Eigen::Index>(k);
    H(row, row) = c.B(i, j);
    if (lattice.contains({i + 1, j})) {
      const auto col = static_cast<Eigen::Index>(lattice.index({i + 1, j}));
      H(row, col) = H(col, row) = c.I(i + 1, j);
    }
    if (lattice.contains({i, j + 1})) {
      const auto col = static_cast<Eigen::Index>(lattice.index({i, j + 1}));
      H(row, col) = H(col, row) = c.J(i, j + 1);
    }
  }
  return H;
}

HamiltonianMatrix build_chain_hamiltonian_1d(int N) {
  if (N < 1) throw ValidationError("chain needs N >= 1, got " + std::to_string(N));
  HamiltonianMatrix H = HamiltonianMatrix::Zero(N + 1, N + 1);
  for (int l = 1; l <= N; ++l) {
    const double coupling = 0.5 * std::sqrt(static_cast<double>(l) * (N + 1 - l));
    H(l - 1, l) = H(l, l - 1) = coupling;
  }
  return H;
}

namespace {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseOp::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseOp::InnerIterator ib(b, kb); ib; ++ib)
          entries.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                               ia.value() * ib.value());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

SparseOp dense_to_sparse(const Eigen::Matrix2cd& m) { return m.sparseView(); }

struct Pauli {
  SparseOp x, y, z, id;
};

const Pauli& pauli() {
  static const Pauli p = [] {
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return Pauli{dense_to_sparse(x), dense_to_sparse(y), dense_to_sparse(z),
                 dense_to_sparse(Eigen::Matrix2cd::Identity())};
  }();
  return p;
}

// sigma acting on tensor factor `site` of `sites` factors
SparseOp embed(const SparseOp& sigma, std::size_t site, std::size_t sites) {
  SparseOp out = site == 0 ? sigma : pauli().id;
  for (std::size_t k = 1; k < sites; ++k) out = kron(out, k == site ? sigma : pauli().id);
  return out;
}

void check_full_size(std::size_t sites) {
  if (sites > kMaxFullHilbertSites)
    throw SizeError("full Hilbert space needs 2^" + std::to_string(sites) +
                    " states; limit is 2^" + std::to_string(kMaxFullHilbertSites));
}

}  // namespace

Eigen::MatrixXd build_full_hamiltonian(const ModelParams& params) {
  const TriangularLattice lattice(params.N);
  const std::size_t sites = lattice.dim();
  check_full_size(sites);
  const CouplingSet c = couplings(params);
  const Pauli& P = pauli();

  std::vector<SparseOp> sx, sy, sz;
  for (std::size_t k = 0; k < sites; ++k) {
    sx.push_back(embed(P.x, k, sites));
    sy.push_back(embed(P.y, k, sites));
    sz.push_back(embed(P.z, k, sites));
  }
  const auto dim = Eigen::Index{1} << sites;
  SparseOp identity(dim, dim);
  identity.setIdentity();

  SparseOp H(dim, dim);
  for (std::size_t k = 0; k < sites; ++k) {
    const auto [i, j] = lattice.site(k);
    if (lattice.contains({i + 1, j})) {
      const std::size_t n = lattice.index({i + 1, j});
      H += Complex(c.I(i + 1, j) / 2) * (sx[k] * sx[n] + sy[k] * sy[n]);
    }
    if (lattice.contains({i, j + 1})) {
      const std::size_t n = lattice.index({i, j + 1});
      H += Complex(c.J(i, j + 1) / 2) * (sx[k] * sx[n] + sy[k] * sy[n]);
    }
    H += Complex(c.B(i, j) / 2) * (sz[k] + identity);
  }
  const Eigen::MatrixXcd dense(H);
  return dense.real();
}

Eigen::MatrixXd total_sigma_z(std::size_t sites) {
  check_full_size(sites);
  const auto dim = Eigen::Index{1} << sites;
  SparseOp total(dim, dim);
  for (std::size_t k = 0; k < sites; ++k) total += embed(pauli().z, k, sites);
  const Eigen::MatrixXcd dense(total);
  return dense.real();
}

Eigen::MatrixXd one_excitation_block(const Eigen::MatrixXd& full, std::size_t sites) {
  check_full_size(sites);
  const auto dim = Eigen::Index{1} << sites;
  if (full.rows() != dim || full.cols() != dim)
    throw SizeError("matrix does not match 2^" + std::to_string(sites));
  // all factors down (local 1) except factor k; factor 0 is the most significant bit
  const auto all_down = dim - 1;
  std::vector<Eigen::Index> states(sites);
  for (std::size_t k = 0; k < sites; ++k)
    states[k] = all_down & ~(Eigen::Index{1} << (sites - 1 - k));
  const auto n = static_cast<Eigen::Index>(sites);
  Eigen::MatrixXd block(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) block(a, b) = full(states[a], states[b]);
  return block;
}

}  // namespace trispin
