#pragma once

#include <span>
#include <vector>

#include "bvp4/poly.hpp"

namespace bvp4 {

/// Nonlinearity f(k, s) given as one polynomial per interior index k (or a
/// single polynomial shared by every k). Coefficient lists are kept in
/// canonical form (no trailing zeros).
struct PolyNonlinearity {
  enum class Mode { Shared, PerIndex };

  Mode mode = Mode::Shared;
  std::vector<Coeffs> coeffs;  // one list (Shared) or N lists (PerIndex)

  static PolyNonlinearity shared(Coeffs c);
  static PolyNonlinearity per_index(std::vector<Coeffs> lists);
  static PolyNonlinearity zero() { return shared({0.0}); }

  /// Coefficients for interior index k (1-based). PerIndex mode rejects k
  /// outside 1..N; Shared mode only rejects k < 1.
  const Coeffs& at(int k) const;

  /// True when every even-degree coefficient is exactly zero.
  bool is_odd() const;
};

/// A function on the grid Z[-1, N+2] with the four boundary values pinned to
/// exact zeros. Immutable after construction; interior values live at
/// k = 1..N. Internal storage is 0-based with offset +1 (value(k) is
/// values()[k + 1]).
class GridFunction {
 public:
  GridFunction(int n, std::span<const double> interior);

  static GridFunction zero(int n);

  int n() const { return n_; }

  /// Value at paper index k in [-1, n+2].
  double value(int k) const;

  /// Interior values y(1..n).
  std::span<const double> interior() const {
    return {values_.data() + 2, static_cast<std::size_t>(n_)};
  }

  /// Full value sequence over k = -1..n+2.
  std::span<const double> values() const { return values_; }

 private:
  int n_;
  std::vector<double> values_;  // length n + 4
};

/// Embeds interior values into the zero-boundary grid space.
GridFunction make_grid_function(int n, std::span<const double> interior);

/// Problem data: size N, coefficient sequences p (k = 1..N+2) and
/// q (k = 1..N+1), and the nonlinearity f.
struct Problem {
  int n;
  std::vector<double> p;  // stored 0-based: p[k - 1] is p(k)
  std::vector<double> q;
  PolyNonlinearity f;

  Problem(int n, std::vector<double> p, std::vector<double> q,
          PolyNonlinearity f);

  double p_at(int k) const { return p[static_cast<std::size_t>(k - 1)]; }
  double q_at(int k) const { return q[static_cast<std::size_t>(k - 1)]; }

  /// f(k, s) with k validated against 1..n.
  double f_at(int k, double s) const;
  /// df/ds(k, s).
  double f_prime_at(int k, double s) const;
};

/// Forward difference: output(i) = x(i+1) - x(i), one entry shorter.
std::vector<double> forward_diff(std::span<const double> x);

/// Second difference: output(i) = x(i+2) - 2 x(i+1) + x(i), two shorter.
std::vector<double> second_diff(std::span<const double> x);

/// Euclidean norm of the interior values.
double norm(const GridFunction& y);

double sup_norm(std::span<const double> x);

/// Pointwise nonlinearity evaluation by Horner's rule. Rejects k < 1 and,
/// in per-index mode, k beyond the stored lists.
double eval_f(const PolyNonlinearity& f, int k, double s);

/// Exact polynomial derivative of f(k, .) evaluated at s.
double eval_f_prime(const PolyNonlinearity& f, int k, double s);

}  // namespace bvp4
