#include "trispin/krawtchouk.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "trispin/errors.hpp"
#include "trispin/parallel.hpp"

namespace trispin {

namespace {

void require_triangle(int a, int b, int n, const char* what) {
  if (!in_triangle({a, b}, n))
    throw DomainError(std::string(what) + " (" + std::to_string(a) + "," + std::to_string(b) +
                      ") outside triangle of order " + std::to_string(n));
}

}  // namespace

KrawtchoukParams krawtchouk_params(const ModelParams& params) {
  const auto& [N, p1, p2, p3, p4, S, delta] = params;
  return {(p1 + p2) * (p1 + p3) / (p1 * S), (p1 + p2) * (p2 + p4) / (p2 * S),
          (p1 + p3) * (p3 + p4) / (p3 * S), (p2 + p4) * (p3 + p4) / (p4 * S)};
}

double eigenvalue(int s, int t, const ModelParams& params) {
  require_triangle(s, t, params.N, "quantum numbers");
  return (params.p1 + params.p2) * s - (params.p3 + params.p4) * t;
}

double log_trinomial(int n, int i, int j) {
  require_triangle(i, j, n, "trinomial index");
  return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(j + 1.0) -
         std::lgamma(n - i - j + 1.0);
}

double log_weight_r(int i, int j, const ModelParams& params) {
  const auto& [N, p1, p2, p3, p4, S, delta] = params;
  require_triangle(i, j, N, "site");
  return 2.0 * (i + j) * std::log(std::abs(delta)) - (i + j) * std::log(S) -
         i * std::log(p1 * p3 * (p2 + p4)) - j * std::log(p2 * p4 * (p1 + p3)) -
         log_trinomial(N, i, j);
}

double weight_r(int i, int j, const ModelParams& params) {
  return std::exp(log_weight_r(i, j, params));
}

double w00(int s, int t, const ModelParams& params) {
  const auto& [N, p1, p2, p3, p4, S, delta] = params;
  require_triangle(s, t, N, "quantum numbers");
  const double log_sq = log_trinomial(N, s, t) + (s + t) * std::log(S) -
                        N * std::log((p1 + p3) * (p2 + p4)) +
                        2.0 * (N - s - t) * std::log(std::abs(delta)) + s * std::log(p1 * p2) +
                        t * std::log(p3 * p4) - (N - t) * std::log(p1 + p2) -
                        (N - s) * std::log(p3 + p4);
  return std::exp(0.5 * log_sq);
}

namespace {

// Coefficient tables of the hypergeometric sum in one arithmetic type.
template <typename R>
struct SumTables {
  // pair_i[i][k][l] = (-i)_{k+l} u1^k v1^l / (k! l!)
  std::vector<std::vector<std::vector<R>>> pair_i;
  // pair_j[j][m][n] = (-j)_{m+n} u2^m v2^n / (m! n!)
  std::vector<std::vector<std::vector<R>>> pair_j;
  // falling[a][b] = (-a)_b, zero for b > a
  std::vector<std::vector<R>> falling;
  // inv_falling_n[q] = 1 / (-N)_q
  std::vector<R> inv_falling_n;

  // Magnitudes are taken when `absolute` is set; used for the cancellation bound.
  SumTables(int N, const ModelParams& params, bool absolute) {
    using std::abs;
    using boost::multiprecision::abs;
    const auto size = static_cast<std::size_t>(N + 1);
    // arguments recomputed in the target precision from the exact double inputs
    const R p1 = params.p1, p2 = params.p2, p3 = params.p3, p4 = params.p4;
    const R S = p1 + p2 + p3 + p4;
    const R u1 = (p1 + p2) * (p1 + p3) / (p1 * S);
    const R u2 = (p1 + p2) * (p2 + p4) / (p2 * S);
    const R v1 = (p1 + p3) * (p3 + p4) / (p3 * S);
    const R v2 = (p2 + p4) * (p3 + p4) / (p4 * S);

    auto powers = [&](const R& base) {
      std::vector<R> out(size, R(1));
      for (std::size_t e = 1; e < size; ++e) out[e] = out[e - 1] * base;
      return out;
    };
    const auto pu1 = powers(u1), pu2 = powers(u2), pv1 = powers(v1), pv2 = powers(v2);

    std::vector<R> inv_fact(size, R(1));
    for (std::size_t e = 1; e < size; ++e) inv_fact[e] = inv_fact[e - 1] / R(static_cast<double>(e));

    falling.assign(size, std::vector<R>(size, R(0)));
    for (int a = 0; a <= N; ++a) {
      falling[a][0] = 1;
      for (int b = 1; b <= a; ++b) falling[a][b] = falling[a][b - 1] * R(b - 1 - a);
    }
    inv_falling_n.resize(size);
    for (int q = 0; q <= N; ++q) inv_falling_n[q] = R(1) / falling[N][q];

    auto pair_table = [&](const std::vector<R>& pa, const std::vector<R>& pb) {
      std::vector<std::vector<std::vector<R>>> out(size);
      for (int a = 0; a <= N; ++a) {
        const auto width = static_cast<std::size_t>(a + 1);
        out[a].assign(width, std::vector<R>(width, R(0)));
        for (int x = 0; x <= a; ++x)
          for (int y = 0; x + y <= a; ++y)
            out[a][x][y] = falling[a][x + y] * inv_fact[x] * inv_fact[y] * pa[x] * pb[y];
      }
      return out;
    };
    pair_i = pair_table(pu1, pv1);
    pair_j = pair_table(pu2, pv2);

    if (absolute) {
      for (auto& row : falling)
        for (auto& v : row) v = abs(v);
      for (auto& v : inv_falling_n) v = abs(v);
      for (auto* table : {&pair_i, &pair_j})
        for (auto& plane : *table)
          for (auto& row : plane)
            for (auto& v : row) v = abs(v);
    }
  }

  // (-a)_b vanishes for b > a, which bounds every index below
  R sum(int i, int j, int s, int t) const {
    R total = 0;
    for (int k = 0; k <= std::min(i, s); ++k) {
      for (int l = 0; l <= std::min(i - k, t); ++l) {
        const R& a = pair_i[i][k][l];
        for (int m = 0; m <= std::min(j, s - k); ++m) {
          const auto& pj = pair_j[j][m];
          const auto& ft = falling[t];
          const R* inv_n = &inv_falling_n[static_cast<std::size_t>(k + l + m)];
          R inner = 0;
          for (int n = 0; n <= std::min(j - m, t - l); ++n) inner += pj[n] * ft[l + n] * inv_n[n];
          total += a * falling[s][k + m] * inner;
        }
      }
    }
    return total;
  }
};

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;
using Real200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

template <typename R>
double unit_roundoff() {
  return static_cast<double>(std::numeric_limits<R>::epsilon());
}

}  // namespace

struct KrawtchoukEvaluator::Tables {
  Tables(int N, const ModelParams& params)
      : magnitude(N, params, true), tier50(N, params, false), tier100(N, params, false),
        tier200(N, params, false) {}

  SumTables<double> magnitude;
  SumTables<Real50> tier50;
  SumTables<Real100> tier100;
  SumTables<Real200> tier200;
};

KrawtchoukEvaluator::KrawtchoukEvaluator(const ModelParams& params)
    : n_(params.N), tables_(std::make_unique<Tables>(params.N, params)) {}

KrawtchoukEvaluator::~KrawtchoukEvaluator() = default;
KrawtchoukEvaluator::KrawtchoukEvaluator(KrawtchoukEvaluator&&) noexcept = default;
KrawtchoukEvaluator& KrawtchoukEvaluator::operator=(KrawtchoukEvaluator&&) noexcept = default;

KrawtchoukEvaluator::Evaluation KrawtchoukEvaluator::evaluate(int i, int j, int s, int t,
                                                              double max_error) const {
  require_triangle(i, j, n_, "site");
  require_triangle(s, t, n_, "quantum numbers");
  const Tables& T = *tables_;
  // rounding error of the accumulated sum is bounded by (term count) * eps * sum |terms|;
  // the count is at most (N+1)^2 for the inner loops that survive truncation
  const double magnitude = T.magnitude.sum(i, j, s, t);
  const double growth = 4.0 * (n_ + 1) * (n_ + 1);

  Evaluation out;
  out.error_bound = growth * unit_roundoff<Real50>() * magnitude;
  out.value = static_cast<double>(T.tier50.sum(i, j, s, t));
  out.digits = std::numeric_limits<Real50>::digits10;
  if (out.error_bound <= max_error) return out;

  out.error_bound = growth * unit_roundoff<Real100>() * magnitude;
  out.value = static_cast<double>(T.tier100.sum(i, j, s, t));
  out.digits = std::numeric_limits<Real100>::digits10;
  if (out.error_bound <= max_error) return out;

  out.error_bound = growth * unit_roundoff<Real200>() * magnitude;
  out.value = static_cast<double>(T.tier200.sum(i, j, s, t));
  out.digits = std::numeric_limits<Real200>::digits10;
  return out;
}

double KrawtchoukEvaluator::operator()(int i, int j, int s, int t) const {
  // first pass sizes the request relative to the value itself
  const Evaluation first = evaluate(i, j, s, t, std::numeric_limits<double>::infinity());
  const double wanted = std::numeric_limits<double>::epsilon() * std::abs(first.value);
  if (first.error_bound <= wanted) return first.value;
  const Evaluation refined = evaluate(i, j, s, t, wanted);
  if (refined.error_bound > wanted && refined.error_bound > std::abs(refined.value))
    throw PrecisionError("Krawtchouk sum K_{" + std::to_string(i) + "," + std::to_string(j) +
                         "}(" + std::to_string(s) + "," + std::to_string(t) +
                         ") cancels beyond the available precision");
  return refined.value;
}

double krawtchouk_explicit(int i, int j, int s, int t, const ModelParams& params) {
  return KrawtchoukEvaluator(params)(i, j, s, t);
}

Eigen::MatrixXd krawtchouk_table(const ModelParams& params) {
  const KrawtchoukEvaluator K(params);
  const TriangularLattice lattice(params.N);
  const auto dim = static_cast<Eigen::Index>(lattice.dim());
  Eigen::MatrixXd table(dim, dim);
  parallel_for(lattice.dim(), [&](std::size_t col) {
    const auto [s, t] = lattice.site(col);
    for (std::size_t row = 0; row < lattice.dim(); ++row) {
      const auto [i, j] = lattice.site(row);
      table(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = K(i, j, s, t);
    }
  });
  return table;
}

RecurrenceResidual recurrence_residual(const ModelParams& params, int s, int t,
                                       const Eigen::VectorXd& column) {
  const auto& [N, p1, p2, p3, p4, S, delta] = params;
  const TriangularLattice lattice(N);
  if (static_cast<std::size_t>(column.size()) != lattice.dim())
    throw DomainError("recurrence column has " + std::to_string(column.size()) +
                      " entries, expected " + std::to_string(lattice.dim()));
  const double x = eigenvalue(s, t, params);
  const double up_i = p1 * p3 * (p2 + p4) * S / ((p1 + p3) * delta);
  const double up_j = p2 * p4 * (p1 + p3) * S / ((p2 + p4) * delta);
  const double down_i = delta / (p1 + p3);
  const double down_j = delta / (p2 + p4);

  auto K = [&](int i, int j) {
    return lattice.contains({i, j}) ? column(static_cast<Eigen::Index>(lattice.index({i, j})))
                                    : 0.0;
  };

  RecurrenceResidual out;
  for (const auto& [i, j] : lattice.sites()) {
    const double k0 = K(i, j);
    const double room = N - i - j;
    const double terms[] = {
        room * up_i * (K(i + 1, j) - k0),
        -room * up_j * (K(i, j + 1) - k0),
        i * down_i * (K(i - 1, j) - k0),
        -j * down_j * (K(i, j - 1) - k0),
    };
    const double lhs = x * k0;
    double rhs = 0;
    double scale = std::abs(lhs);
    for (double term : terms) {
      rhs += term;
      scale = std::max(scale, std::abs(term));
    }
    out.max_abs = std::max(out.max_abs, std::abs(lhs - rhs));
    out.scale = std::max(out.scale, scale);
  }
  return out;
}

EigenSystem build_eigensystem(const ModelParams& params) {
  constexpr double kEntryTolerance = 1e-15;
  EigenSystem es;
  es.params = params;
  es.lattice = TriangularLattice(params.N);
  const auto& lattice = es.lattice;
  const auto dim = static_cast<Eigen::Index>(lattice.dim());

  std::vector<double> inv_rho(lattice.dim());
  for (std::size_t row = 0; row < lattice.dim(); ++row) {
    const auto [i, j] = lattice.site(row);
    const double sign = (params.delta < 0 && (i + j) % 2 == 1) ? -1.0 : 1.0;
    inv_rho[row] = sign * std::exp(-0.5 * log_weight_r(i, j, params));
  }

  es.eigenvalues.resize(dim);
  es.W.resize(dim, dim);
  const KrawtchoukEvaluator K(params);
  parallel_for(lattice.dim(), [&](std::size_t col) {
    const auto [s, t] = lattice.site(col);
    const auto c = static_cast<Eigen::Index>(col);
    es.eigenvalues(c) = eigenvalue(s, t, params);
    const double norm = w00(s, t, params);
    for (std::size_t row = 0; row < lattice.dim(); ++row) {
      const auto [i, j] = lattice.site(row);
      // entries of W are at most 1 in magnitude; ask for a small absolute error
      const double factor = std::abs(norm * inv_rho[row]);
      const auto k = K.evaluate(i, j, s, t, kEntryTolerance / factor);
      if (k.error_bound * factor > kEntryTolerance)
        throw PrecisionError("eigenvector entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") of column (" + std::to_string(s) + "," + std::to_string(t) +
                             ") cannot be resolved: p1*p4 - p2*p3 too small for N = " +
                             std::to_string(params.N));
      es.W(static_cast<Eigen::Index>(row), c) = norm * k.value * inv_rho[row];
    }
  });
  return es;
}

}  // namespace trispin
