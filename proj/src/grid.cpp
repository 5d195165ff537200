#include "bvp4/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bvp4 {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw std::invalid_argument(std::string(what) + " has non-finite entry at position " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

PolyNonlinearity PolyNonlinearity::shared(Coeffs c) {
  require_finite(c, "shared coefficient list");
  PolyNonlinearity f;
  f.mode = Mode::Shared;
  f.coeffs.push_back(canonical_coeffs(std::move(c)));
  return f;
}

PolyNonlinearity PolyNonlinearity::per_index(std::vector<Coeffs> lists) {
  if (lists.empty()) {
    throw std::invalid_argument("per-index nonlinearity needs at least one coefficient list");
  }
  PolyNonlinearity f;
  f.mode = Mode::PerIndex;
  f.coeffs.reserve(lists.size());
  for (auto& c : lists) {
    require_finite(c, "per-index coefficient list");
    f.coeffs.push_back(canonical_coeffs(std::move(c)));
  }
  return f;
}

const Coeffs& PolyNonlinearity::at(int k) const {
  if (k < 1) {
    throw std::invalid_argument("nonlinearity index k=" + std::to_string(k) +
                                " is below 1");
  }
  if (mode == Mode::Shared) return coeffs.front();
  if (static_cast<std::size_t>(k) > coeffs.size()) {
    throw std::invalid_argument("nonlinearity index k=" + std::to_string(k) +
                                " exceeds N=" + std::to_string(coeffs.size()));
  }
  return coeffs[static_cast<std::size_t>(k - 1)];
}

bool PolyNonlinearity::is_odd() const {
  for (const auto& c : coeffs) {
    for (std::size_t j = 0; j < c.size(); j += 2) {
      if (c[j] != 0.0) return false;
    }
  }
  return true;
}

GridFunction::GridFunction(int n, std::span<const double> interior) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("grid size must be positive, got " + std::to_string(n));
  }
  if (interior.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("interior length mismatch: expected " + std::to_string(n) +
                                ", got " + std::to_string(interior.size()));
  }
  for (std::size_t i = 0; i < interior.size(); ++i) {
    if (!std::isfinite(interior[i])) {
      throw std::invalid_argument("interior has non-finite entry at k=" +
                                  std::to_string(i + 1));
    }
  }
  values_.assign(static_cast<std::size_t>(n) + 4, 0.0);
  for (int k = 1; k <= n; ++k) {
    values_[static_cast<std::size_t>(k + 1)] = interior[static_cast<std::size_t>(k - 1)];
  }
}

GridFunction GridFunction::zero(int n) {
  std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  return GridFunction(n, zeros);
}

double GridFunction::value(int k) const {
  if (k < -1 || k > n_ + 2) {
    throw std::invalid_argument("grid index k=" + std::to_string(k) + " outside [-1, " +
                                std::to_string(n_ + 2) + "]");
  }
  return values_[static_cast<std::size_t>(k + 1)];
}

GridFunction make_grid_function(int n, std::span<const double> interior) {
  return GridFunction(n, interior);
}

Problem::Problem(int n_in, std::vector<double> p_in, std::vector<double> q_in,
                 PolyNonlinearity f_in)
    : n(n_in), p(std::move(p_in)), q(std::move(q_in)), f(std::move(f_in)) {
  if (n < 1) {
    throw std::invalid_argument("N must be at least 1, got " + std::to_string(n));
  }
  if (p.size() != static_cast<std::size_t>(n) + 2) {
    throw std::invalid_argument("p must have length N+2=" + std::to_string(n + 2) +
                                ", got " + std::to_string(p.size()));
  }
  if (q.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("q must have length N+1=" + std::to_string(n + 1) +
                                ", got " + std::to_string(q.size()));
  }
  require_finite(p, "p");
  require_finite(q, "q");
  if (f.mode == PolyNonlinearity::Mode::PerIndex &&
      f.coeffs.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("per-index nonlinearity must have exactly N=" +
                                std::to_string(n) + " lists, got " +
                                std::to_string(f.coeffs.size()));
  }
}

double Problem::f_at(int k, double s) const {
  if (k < 1 || k > n) {
    throw std::invalid_argument("nonlinearity index k=" + std::to_string(k) +
                                " outside 1..N=" + std::to_string(n));
  }
  return poly_eval(f.at(k), s);
}

double Problem::f_prime_at(int k, double s) const {
  if (k < 1 || k > n) {
    throw std::invalid_argument("nonlinearity index k=" + std::to_string(k) +
                                " outside 1..N=" + std::to_string(n));
  }
  return poly_eval(poly_derivative(f.at(k)), s);
}

std::vector<double> forward_diff(std::span<const double> x) {
  if (x.size() < 2) {
    throw std::invalid_argument("forward difference needs at least 2 entries, got " +
                                std::to_string(x.size()));
  }
  std::vector<double> out(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) out[i] = x[i + 1] - x[i];
  return out;
}

std::vector<double> second_diff(std::span<const double> x) {
  if (x.size() < 3) {
    throw std::invalid_argument("second difference needs at least 3 entries, got " +
                                std::to_string(x.size()));
  }
  std::vector<double> out(x.size() - 2);
  for (std::size_t i = 0; i + 2 < x.size(); ++i) {
    out[i] = x[i + 2] - 2.0 * x[i + 1] + x[i];
  }
  return out;
}

double norm(const GridFunction& y) {
  double s = 0.0;
  for (double v : y.interior()) s += v * v;
  return std::sqrt(s);
}

double sup_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double eval_f(const PolyNonlinearity& f, int k, double s) {
  return poly_eval(f.at(k), s);
}

double eval_f_prime(const PolyNonlinearity& f, int k, double s) {
  return poly_eval(poly_derivative(f.at(k)), s);
}

}  // namespace bvp4
