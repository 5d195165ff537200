#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace bvp4 {

/// Real polynomial coefficients in ascending degree: c[0] + c[1] s + ...
using Coeffs = std::vector<double>;

/// Trims trailing zero coefficients; the zero polynomial is the single
/// entry {0}.
inline Coeffs canonical_coeffs(Coeffs c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return c;
}

inline bool poly_is_zero(const Coeffs& c) {
  return c.size() == 1 && c[0] == 0.0;
}

/// Degree of a canonical polynomial ({0} has degree 0).
inline int poly_degree(const Coeffs& c) {
  return static_cast<int>(c.size()) - 1;
}

/// Horner evaluation.
inline double poly_eval(const Coeffs& c, double s) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

inline Coeffs poly_derivative(const Coeffs& c) {
  Coeffs d;
  for (std::size_t j = 1; j < c.size(); ++j) {
    d.push_back(static_cast<double>(j) * c[j]);
  }
  return canonical_coeffs(std::move(d));
}

/// Antiderivative with value zero at the origin, evaluated at s.
inline double poly_antiderivative_eval(const Coeffs& c, double s) {
  // Coefficients c_j become c_j / (j + 1) at degree j + 1; Horner on the
  // shifted polynomial, then one final multiply by s keeps F(0) = 0 exact.
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * s + c[i] / static_cast<double>(i + 1);
  }
  return acc * s;
}

/// Cauchy bound: every real root r of a nonconstant polynomial satisfies
/// |r| <= 1 + max_j |c_j| / |c_d|. Constant polynomials return 0.
inline double cauchy_root_bound(const Coeffs& c) {
  const int d = poly_degree(c);
  if (d < 1) return 0.0;
  double worst = 0.0;
  for (int j = 0; j < d; ++j) {
    worst = std::max(worst, std::abs(c[j]) / std::abs(c[d]));
  }
  return 1.0 + worst;
}

/// Coefficients of (f(s) + f(-s)) / 2, i.e. the even-degree part.
inline Coeffs poly_even_part(const Coeffs& c) {
  Coeffs e(c.size(), 0.0);
  for (std::size_t j = 0; j < c.size(); j += 2) e[j] = c[j];
  return canonical_coeffs(std::move(e));
}

}  // namespace bvp4
