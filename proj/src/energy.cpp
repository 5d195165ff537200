#include "bvp4/energy.hpp"

#include <stdexcept>
#include <string>

#include "bvp4/spectra.hpp"

namespace bvp4 {

namespace {

void require_same_size(const Problem& problem, const GridFunction& y) {
  if (problem.n != y.n()) {
    throw std::invalid_argument("dimension mismatch: problem has N=" +
                                std::to_string(problem.n) + ", grid function has N=" +
                                std::to_string(y.n()));
  }
}

}  // namespace

double antiderivative_F(const PolyNonlinearity& f, int k, double s) {
  return poly_antiderivative_eval(f.at(k), s);
}

EnergyBreakdown energy(const Problem& problem, const GridFunction& y) {
  require_same_size(problem, y);
  const int n = problem.n;
  // d2[i] holds D2 y(k-2) for k = i+1; d1[i] holds D y(k-1) for k = i+1.
  const std::vector<double> d2 = second_diff(y.values());
  const std::vector<double> d1 = forward_diff(y.values());

  EnergyBreakdown e;
  for (int k = 1; k <= n + 2; ++k) {
    const double w = d2[static_cast<std::size_t>(k - 1)];
    e.p_term += 0.5 * problem.p_at(k) * w * w;
  }
  for (int k = 1; k <= n + 1; ++k) {
    const double v = d1[static_cast<std::size_t>(k)];
    e.q_term += 0.5 * problem.q_at(k) * v * v;
  }
  for (int k = 1; k <= n; ++k) {
    e.f_term += poly_antiderivative_eval(problem.f.at(k), y.value(k));
  }
  e.total = e.p_term - e.q_term + e.f_term;
  return e;
}

Matrix quadratic_form_matrix(const Problem& problem) {
  const int n = problem.n;
  const Matrix v = build_V(n);
  const Matrix w = build_W(n);
  const std::size_t un = static_cast<std::size_t>(n);
  Matrix a(un, un, 0.0);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = i; j < un; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < w.rows(); ++r) {
        if (w(r, i) != 0.0 && w(r, j) != 0.0) {
          acc += w(r, i) * problem.p[r] * w(r, j);
        }
      }
      for (std::size_t r = 0; r < v.rows(); ++r) {
        if (v(r, i) != 0.0 && v(r, j) != 0.0) {
          acc -= v(r, i) * problem.q[r] * v(r, j);
        }
      }
      a(i, j) = acc;
      a(j, i) = acc;
    }
  }
  return a;
}

std::vector<double> gradient_from_matrix(const Matrix& stiffness, const Problem& problem,
                                         const GridFunction& y) {
  require_same_size(problem, y);
  std::vector<double> g = matvec(stiffness, y.interior());
  for (int k = 1; k <= problem.n; ++k) {
    g[static_cast<std::size_t>(k - 1)] += poly_eval(problem.f.at(k), y.value(k));
  }
  return g;
}

std::vector<double> gradient_quadratic_form(const Problem& problem, const GridFunction& y) {
  return gradient_from_matrix(quadratic_form_matrix(problem), problem, y);
}

std::vector<double> residual_stencil(const Problem& problem, const GridFunction& y) {
  require_same_size(problem, y);
  const int n = problem.n;
  // b(k) = p(k) D2 y(k-2) for k = 1..N+2; a(k) = q(k) D y(k-1) for k = 1..N+1.
  const std::vector<double> d2 = second_diff(y.values());
  const std::vector<double> d1 = forward_diff(y.values());
  std::vector<double> b(static_cast<std::size_t>(n) + 2);
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n + 2; ++k) {
    b[static_cast<std::size_t>(k - 1)] = problem.p_at(k) * d2[static_cast<std::size_t>(k - 1)];
  }
  for (int k = 1; k <= n + 1; ++k) {
    a[static_cast<std::size_t>(k - 1)] = problem.q_at(k) * d1[static_cast<std::size_t>(k)];
  }
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 1);
    const double fourth = b[i + 2] - 2.0 * b[i + 1] + b[i];  // D2 of p D2 y at k
    const double secnd = a[i + 1] - a[i];                    // D of q D y at k
    r[i] = (fourth + secnd) + poly_eval(problem.f.at(k), y.value(k));
  }
  return r;
}

Matrix hessian_from_matrix(const Matrix& stiffness, const Problem& problem,
                           const GridFunction& y) {
  require_same_size(problem, y);
  Matrix h = stiffness;
  for (int k = 1; k <= problem.n; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 1);
    h(i, i) += poly_eval(poly_derivative(problem.f.at(k)), y.value(k));
  }
  return h;
}

Matrix hessian(const Problem& problem, const GridFunction& y) {
  return hessian_from_matrix(quadratic_form_matrix(problem), problem, y);
}

}  // namespace bvp4
