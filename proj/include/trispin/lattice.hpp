#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace trispin {

/// Lattice point (i, j) of the triangle i + j <= N.
struct SiteIndex {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const SiteIndex&, const SiteIndex&) = default;
};

/// Number of points with i, j >= 0 and i + j <= n, i.e. (n+1)(n+2)/2.
constexpr std::size_t triangle_size(int n) {
  return n < 0 ? 0 : static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

/// True when `site` lies in the triangle of order `n`.
constexpr bool in_triangle(SiteIndex site, int n) {
  return site.i >= 0 && site.j >= 0 && site.i + site.j <= n;
}

/// Sites ordered lexicographically by (i, j); position 0 is the apex (0,0).
std::vector<SiteIndex> enumerate_sites(int n);

/// Position of `site` in enumerate_sites(n). Throws DomainError outside the triangle.
std::size_t site_index(SiteIndex site, int n);

/// Triangular domain of order N with a fixed site <-> matrix index bijection.
///
/// The same ordering is reused for the quantum numbers (s, t) labelling
/// eigenvectors, so a column index of an eigenbasis matrix and a row index
/// of a Hamiltonian follow one convention.
class TriangularLattice {
public:
  explicit TriangularLattice(int n);

  int order() const { return n_; }
  std::size_t dim() const { return sites_.size(); }
  const std::vector<SiteIndex>& sites() const { return sites_; }
  const SiteIndex& site(std::size_t index) const { return sites_.at(index); }
  std::size_t index(SiteIndex site) const { return site_index(site, n_); }
  bool contains(SiteIndex site) const { return in_triangle(site, n_); }

  /// Hypotenuse sites (k, N-k) for k = 0..N.
  std::vector<SiteIndex> hypotenuse() const;

private:
  int n_;
  std::vector<SiteIndex> sites_;
};

}  // namespace trispin
