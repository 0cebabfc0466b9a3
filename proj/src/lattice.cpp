#include "trispin/lattice.hpp"

#include <string>

#include "trispin/errors.hpp"

namespace trispin {

std::vector<SiteIndex> enumerate_sites(int n) {
  if (n < 0) throw DomainError("lattice order must be nonnegative, got " + std::to_string(n));
  std::vector<SiteIndex> out;
  out.reserve(triangle_size(n));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) out.push_back({i, j});
  return out;
}

std::size_t site_index(SiteIndex site, int n) {
  if (!in_triangle(site, n))
    throw DomainError("site (" + std::to_string(site.i) + "," + std::to_string(site.j) +
                      ") outside triangle of order " + std::to_string(n));
  // rows i' < i contribute (n + 1 - i') entries each
  const auto i = static_cast<std::size_t>(site.i);
  const auto rows_before = i * static_cast<std::size_t>(n + 1) - i * (i - 1) / 2;
  return rows_before + static_cast<std::size_t>(site.j);
}

TriangularLattice::TriangularLattice(int n) : n_(n), sites_(enumerate_sites(n)) {}

std::vector<SiteIndex> TriangularLattice::hypotenuse() const {
  std::vector<SiteIndex> out;
  out.reserve(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) out.push_back({k, n_ - k});
  return out;
}

}  // namespace trispin
