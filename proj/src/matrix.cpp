#include "bvp4/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace bvp4 {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> matvec(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) {
    throw std::invalid_argument("matvec size mismatch: " + std::to_string(m.cols()) +
                                " columns vs vector length " + std::to_string(x.size()));
  }
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul size mismatch");
  }
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  }
  return v;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  }
  return std::sqrt(s);
}

double max_asymmetry(const Matrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      v = std::max(v, std::abs(m(i, j) - m(j, i)));
    }
  }
  return v;
}

bool ldlt_solve(const Matrix& s, std::span<const double> rhs, std::vector<double>& out,
                double pivot_floor) {
  const std::size_t n = s.rows();
  if (s.cols() != n || rhs.size() != n) {
    throw std::invalid_argument("ldlt_solve needs a square system");
  }
  Matrix lower(n, n, 0.0);
  std::vector<double> d(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double dj = s(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= lower(j, k) * lower(j, k) * d[k];
    if (std::abs(dj) <= pivot_floor) return false;
    d[j] = dj;
    lower(j, j) = 1.0;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k) * d[k];
      lower(i, j) = v / dj;
    }
  }
  // Forward, diagonal, then backward substitution.
  std::vector<double> z(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) z[i] -= lower(i, k) * z[k];
  }
  for (std::size_t i = 0; i < n; ++i) z[i] /= d[i];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) z[i] -= lower(k, i) * z[k];
  }
  out = std::move(z);
  return true;
}

bool lu_solve(Matrix a, std::vector<double> rhs, std::vector<double>& out) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) {
    throw std::invalid_argument("lu_solve needs a square system");
  }
  const double scale = max_abs(a);
  const double floor = 1e-14 * (scale > 0.0 ? scale : 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    }
    if (std::abs(a(piv, col)) <= floor) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double factor = a(i, col) / a(col, col);
      if (factor == 0.0) continue;
      a(i, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= factor * a(col, j);
      rhs[i] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double v = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= a(i, j) * x[j];
    x[i] = v / a(i, i);
  }
  out = std::move(x);
  return true;
}

std::size_t numerical_rank(Matrix b, double threshold) {
  const std::size_t m = b.rows(), n = b.cols();
  const std::size_t steps = std::min(m, n);
  std::size_t rank = 0;
  for (std::size_t step = 0; step < steps; ++step) {
    // Full pivoting: pick the largest remaining entry.
    std::size_t pi = step, pj = step;
    double best = 0.0;
    for (std::size_t i = step; i < m; ++i) {
      for (std::size_t j = step; j < n; ++j) {
        if (std::abs(b(i, j)) > best) {
          best = std::abs(b(i, j));
          pi = i;
          pj = j;
        }
      }
    }
    if (best <= threshold) break;
    if (pi != step) {
      for (std::size_t j = 0; j < n; ++j) std::swap(b(pi, j), b(step, j));
    }
    if (pj != step) {
      for (std::size_t i = 0; i < m; ++i) std::swap(b(i, pj), b(i, step));
    }
    ++rank;
    for (std::size_t i = step + 1; i < m; ++i) {
      const double factor = b(i, step) / b(step, step);
      if (factor == 0.0) continue;
      for (std::size_t j = step; j < n; ++j) b(i, j) -= factor * b(step, j);
    }
  }
  return rank;
}

}  // namespace bvp4
