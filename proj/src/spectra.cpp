#include "bvp4/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bvp4 {

namespace {

void require_size(int n) {
  if (n < 1) {
    throw std::invalid_argument("matrix builders need n >= 1, got " + std::to_string(n));
  }
}

void require_symmetric(const Matrix& s) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument("symmetric routine called with a non-square matrix");
  }
  const double asym = max_asymmetry(s);
  if (asym > 1e-12) {
    throw std::invalid_argument("matrix is not symmetric: max |S - S^T| entry is " +
                                std::to_string(asym));
  }
}

double off_diagonal_norm(const Matrix& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i + 1; j < s.cols(); ++j) acc += 2.0 * s(i, j) * s(i, j);
  }
  return std::sqrt(acc);
}

}  // namespace

Matrix build_V(int n) {
  require_size(n);
  const std::size_t un = static_cast<std::size_t>(n);
  Matrix v(un + 1, un, 0.0);
  for (std::size_t c = 0; c < un; ++c) {
    v(c, c) = 1.0;
    v(c + 1, c) = -1.0;
  }
  return v;
}

Matrix build_W(int n) {
  require_size(n);
  const std::size_t un = static_cast<std::size_t>(n);
  Matrix w(un + 2, un, 0.0);
  for (std::size_t c = 0; c < un; ++c) {
    w(c, c) = 1.0;
    w(c + 1, c) = -2.0;
    w(c + 2, c) = 1.0;
  }
  return w;
}

Matrix gram(const Matrix& m) {
  const std::size_t n = m.cols();
  Matrix g(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) acc += m(r, i) * m(r, j);
      g(i, j) = acc;
      g(j, i) = acc;
    }
  }
  return g;
}

Eigensystem jacobi_eigensystem(const Matrix& s, bool want_vectors) {
  require_symmetric(s);
  const std::size_t n = s.rows();
  Matrix a = s;
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix();

  Eigensystem out;
  if (n == 1) {
    out.values = {a(0, 0)};
    if (want_vectors) out.vectors = Matrix::identity(1);
    return out;
  }

  const double total_norm = frobenius_norm(a);  // invariant under rotations
  const double stop = 1e-14 * (total_norm > 0.0 ? total_norm : 1.0);
  const int max_sweeps = 100;

  int sweep = 0;
  while (off_diagonal_norm(a) > stop) {
    if (++sweep > max_sweeps) {
      throw std::runtime_error("Jacobi iteration did not converge in " +
                               std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - sn * vkq;
            v(k, q) = sn * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]);
  out.sweeps = sweep;
  if (want_vectors) {
    out.vectors = Matrix(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
  }
  return out;
}

double smallest_eigenvalue(const Matrix& s) {
  return jacobi_eigensystem(s).values.front();
}

double laplacian_gram_eigenvalue(int n, int k) {
  const double x = std::sin(static_cast<double>(k) * std::numbers::pi /
                            (2.0 * (static_cast<double>(n) + 1.0)));
  return 4.0 * x * x;
}

SpectralBounds spectral_bounds(int n) {
  require_size(n);
  SpectralBounds b;
  b.n = n;
  b.lambda1 = smallest_eigenvalue(gram(build_V(n)));
  b.lambda2 = smallest_eigenvalue(gram(build_W(n)));
  b.lambda1_closed_form = laplacian_gram_eigenvalue(n, 1);
  if (!(b.lambda1 > 0.0) || !(b.lambda2 > 0.0) || b.lambda1 > 4.0 + 1e-9 ||
      b.lambda2 > 16.0 + 1e-9) {
    throw std::logic_error("spectral bounds outside (0,4] x (0,16] at n=" +
                           std::to_string(n));
  }
  if (std::abs(b.lambda1 - b.lambda1_closed_form) > 1e-9) {
    throw std::logic_error("lambda1 disagrees with its closed form at n=" +
                           std::to_string(n));
  }
  return b;
}

bool is_positive_definite(const Matrix& s) {
  require_symmetric(s);
  const std::size_t n = s.rows();
  const double threshold = 1e-12 * max_abs(s);
  Matrix lower(n, n, 0.0);
  std::vector<double> d(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double dj = s(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= lower(j, k) * lower(j, k) * d[k];
    if (!(dj > threshold)) return false;
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k) * d[k];
      lower(i, j) = v / dj;
    }
  }
  return true;
}

}  // namespace bvp4
