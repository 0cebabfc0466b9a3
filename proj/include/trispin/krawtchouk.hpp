#pragma once

#include <Eigen/Dense>
#include <memory>

#include "trispin/lattice.hpp"
#include "trispin/model.hpp"

namespace trispin {

/// Arguments of the monomials in the hypergeometric sum for K_{i,j}(s,t).
struct KrawtchoukParams {
  double u1 = 0, u2 = 0, v1 = 0, v2 = 0;
};

KrawtchoukParams krawtchouk_params(const ModelParams& params);

/// x_{s,t} = (p1+p2) s - (p3+p4) t. Throws DomainError unless s, t >= 0 and s + t <= N.
double eigenvalue(int s, int t, const ModelParams& params);

/// log of N! / (i! j! (N-i-j)!).
double log_trinomial(int n, int i, int j);

/// log of the weight r_{i,j}; see weight_r.
double log_weight_r(int i, int j, const ModelParams& params);

/// r_{i,j} = delta^{2(i+j)} S^{-(i+j)} / [(p1 p3 (p2+p4))^i (p2 p4 (p1+p3))^j] / trinomial(N; i, j),
/// with delta = p1 p4 - p2 p3. Evaluated in log space.
double weight_r(int i, int j, const ModelParams& params);

/// Normalization W_{0,0}(s,t) > 0 of the eigenvector with quantum numbers (s, t).
///
///   W_{0,0}(s,t)^2 = trinomial(N; s, t) S^{s+t} delta^{2(N-s-t)} (p1 p2)^s (p3 p4)^t
///                    / ( [(p1+p3)(p2+p4)]^N (p1+p2)^{N-t} (p3+p4)^{N-s} )
///
/// The S^{s+t} factor is what makes sum_{s,t} W_{0,0}(s,t)^2 = 1.
double w00(int s, int t, const ModelParams& params);

/// Evaluates the two-variable Krawtchouk polynomials
///
///   K_{i,j}(s,t) = sum_{k+l+m+n <= N} (-i)_{k+l} (-j)_{m+n} (-s)_{k+m} (-t)_{l+n}
///                  / (k! l! m! n! (-N)_{k+l+m+n}) * u1^k v1^l u2^m v2^n
///
/// Each summation index pairs one of (i, j) with one of (s, t): k with (i, s),
/// l with (i, t), m with (j, s), n with (j, t), and carries the matching
/// monomial argument. The sum cancels heavily for N beyond a handful, and more
/// so as p1 p4 - p2 p3 shrinks, so it is accumulated in extended binary
/// floating point: 50 significant digits first, then 100 and 200 when a
/// bound on the rounding error (from the sum of term magnitudes) is too
/// large. Tables of powers, factorials and Pochhammer symbols are built once
/// in the constructor; evaluation is thread-safe.
class KrawtchoukEvaluator {
public:
  explicit KrawtchoukEvaluator(const ModelParams& params);
  ~KrawtchoukEvaluator();
  KrawtchoukEvaluator(KrawtchoukEvaluator&&) noexcept;
  KrawtchoukEvaluator& operator=(KrawtchoukEvaluator&&) noexcept;

  struct Evaluation {
    double value = 0;
    double error_bound = 0;  ///< bound on |value - exact| before the final rounding
    int digits = 0;          ///< decimal digits of the arithmetic that produced `value`
  };

  /// K_{i,j}(s,t) in the cheapest precision whose error bound is <= max_error
  /// (or the highest precision available). Throws DomainError when (i,j) or
  /// (s,t) leaves the triangle.
  Evaluation evaluate(int i, int j, int s, int t, double max_error) const;

  /// K_{i,j}(s,t) to about double-precision relative accuracy. Throws
  /// PrecisionError when even the highest precision cannot resolve it.
  double operator()(int i, int j, int s, int t) const;

  int order() const { return n_; }

private:
  struct Tables;
  int n_;
  std::unique_ptr<Tables> tables_;
};

/// Single evaluation of K_{i,j}(s,t); prefer KrawtchoukEvaluator for many values.
double krawtchouk_explicit(int i, int j, int s, int t, const ModelParams& params);

/// Matrix of K_{i,j}(s,t): rows are sites (i,j), columns are (s,t), both in
/// enumerate_sites() order.
Eigen::MatrixXd krawtchouk_table(const ModelParams& params);

/// Outcome of plugging one column K_{.,.}(s,t) into the five-term recurrence.
struct RecurrenceResidual {
  double max_abs = 0;  ///< max over (i,j) of |LHS - RHS|
  double scale = 0;    ///< max over (i,j) of the largest individual addend
  double relative() const { return scale > 0 ? max_abs / scale : max_abs; }
};

/// Checks x_{s,t} K_{i,j} against the neighbour combination with coefficients
/// (N-i-j) a / delta, -(N-i-j) b / delta, i delta / (p1+p3), -j delta / (p2+p4),
/// where a = p1 p3 (p2+p4) S / (p1+p3) and b = p2 p4 (p1+p3) S / (p2+p4).
/// `column` holds K_{i,j}(s,t) for every site in enumerate_sites() order.
RecurrenceResidual recurrence_residual(const ModelParams& params, int s, int t,
                                       const Eigen::VectorXd& column);

/// Analytic eigenbasis of the one-excitation Hamiltonian.
struct EigenSystem {
  ModelParams params;
  TriangularLattice lattice{0};
  Eigen::VectorXd eigenvalues;  ///< x_{s,t}, indexed like the columns of W
  Eigen::MatrixXd W;            ///< W(site(i,j), qn(s,t))

  double eigenvalue(int s, int t) const {
    return eigenvalues(static_cast<Eigen::Index>(lattice.index({s, t})));
  }
};

/// W_{i,j}(s,t) = W_{0,0}(s,t) K_{i,j}(s,t) / rho_{i,j}, with
/// rho_{i,j} = sgn(delta)^{i+j} sqrt(r_{i,j}), i.e. delta^{i+j} rather than
/// |delta|^{i+j} under the square root of delta^{2(i+j)}. Columns are filled
/// in parallel (see parallel_for). Each entry is computed to an absolute
/// error below 1e-15; PrecisionError is thrown when that is out of reach.
EigenSystem build_eigensystem(const ModelParams& params);

}  // namespace trispin
