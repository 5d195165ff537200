#include "bvp4/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bvp4/rng.hpp"
#include "bvp4/spectra.hpp"

namespace bvp4 {

namespace {

bool all_finite(std::span<const double> xs) {
  for (double v : xs) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double euclid_norm(std::span<const double> xs) {
  double s = 0.0;
  for (double v : xs) s += v * v;
  return std::sqrt(s);
}

/// Multiplicative deflation factor M(x) = prod_i (1/||x - x_i||^p + shift)
/// and its gradient. Empty point set means M = 1, grad M = 0.
struct Deflation {
  const std::vector<std::vector<double>>* points = nullptr;
  int power = 2;
  double shift = 1.0;

  bool active() const { return points != nullptr && !points->empty(); }

  double factor(std::span<const double> x) const {
    if (!active()) return 1.0;
    double m = 1.0;
    for (const auto& pt : *points) {
      const double d = euclid_distance(x, pt);
      m *= std::pow(d, -power) + shift;
    }
    return m;
  }

  static double euclid_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      s += diff * diff;
    }
    return std::sqrt(s);
  }

  std::vector<double> gradient(std::span<const double> x, double factor_value) const {
    std::vector<double> g(x.size(), 0.0);
    if (!active() || !std::isfinite(factor_value)) return g;
    for (const auto& pt : *points) {
      const double d = euclid_distance(x, pt);
      const double mi = std::pow(d, -power) + shift;
      // d/dx of d^-p is -p d^(-p-2) (x - x_i).
      const double coeff = -static_cast<double>(power) * std::pow(d, -power - 2) / mi;
      for (std::size_t j = 0; j < x.size(); ++j) g[j] += coeff * (x[j] - pt[j]);
    }
    for (double& v : g) v *= factor_value;
    return g;
  }
};

struct CoreResult {
  bool ok = false;
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
  std::string message;
};

/// Shared Newton engine. The deflation context is empty for plain solves.
CoreResult newton_core(const Problem& problem, const Matrix& stiffness,
                       std::vector<double> x, const SolverOptions& opts,
                       const Deflation& deflation, double distinct_tol_for_duplicates) {
  const int n = problem.n;
  CoreResult out;

  auto gradient_at = [&](std::span<const double> pt) {
    std::vector<double> g = matvec(stiffness, pt);
    for (int k = 1; k <= n; ++k) {
      g[static_cast<std::size_t>(k - 1)] +=
          poly_eval(problem.f.at(k), pt[static_cast<std::size_t>(k - 1)]);
    }
    return g;
  };
  auto deflated_norm = [&](std::span<const double> pt) {
    const std::vector<double> g = gradient_at(pt);
    return deflation.factor(pt) * euclid_norm(g);
  };

  std::vector<double> g = gradient_at(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (!all_finite(g) || !all_finite(x)) {
      out.iterations = iter;
      out.message = "non-finite arithmetic at iteration " + std::to_string(iter);
      return out;
    }
    if (sup_norm(g) <= opts.tol_residual) {
      if (deflation.active() && distinct_tol_for_duplicates > 0.0) {
        for (const auto& pt : *deflation.points) {
          if (sup_distance(x, pt) <= distinct_tol_for_duplicates) {
            out.iterations = iter;
            out.message = "converged onto an already-found solution";
            return out;
          }
        }
      }
      const GridFunction y(n, x);
      const double stencil = sup_norm(residual_stencil(problem, y));
      if (stencil <= opts.tol_residual) {
        out.ok = true;
        out.x = std::move(x);
        out.residual_norm = stencil;
        out.iterations = iter;
        return out;
      }
      // Stencil re-check disagrees at the tolerance edge: keep iterating.
    }

    const GridFunction y(n, x);
    Matrix h = hessian_from_matrix(stiffness, problem, y);
    const double mfac = deflation.factor(x);
    const std::vector<double> mgrad = deflation.gradient(x, mfac);

    std::vector<double> step;
    bool have_step = false;
    if (!deflation.active()) {
      std::vector<double> rhs(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
      have_step = ldlt_solve(h, rhs, step, 1e-14 * std::max(1.0, max_abs(h)));
    } else {
      // J = M H + g (grad M)^T, the Jacobian of the deflated residual M g.
      Matrix jac(h.rows(), h.cols(), 0.0);
      for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
          jac(i, j) = mfac * h(i, j) + g[i] * mgrad[j];
        }
      }
      std::vector<double> rhs(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -mfac * g[i];
      have_step = lu_solve(jac, rhs, step) && all_finite(step);
    }

    bool accepted = false;
    const double phi0 = deflation.active() ? mfac * euclid_norm(g) : euclid_norm(g);
    if (have_step) {
      const double len = euclid_norm(step);
      if (len > opts.max_step) {
        const double scale = opts.max_step / len;
        for (double& v : step) v *= scale;
      }
      double t = 1.0;
      for (int back = 0; back < 30; ++back) {
        std::vector<double> trial(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + t * step[i];
        if (all_finite(trial) && deflated_norm(trial) < phi0) {
          x = std::move(trial);
          accepted = true;
          break;
        }
        t *= opts.backtrack_factor;
      }
    }

    if (!accepted) {
      // Gradient descent on psi = 1/2 ||M g||^2 with Armijo backtracking;
      // grad psi = J^T (M g).
      std::vector<double> mg(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) mg[i] = mfac * g[i];
      std::vector<double> grad_psi(g.size(), 0.0);
      for (std::size_t j = 0; j < g.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
          acc += (mfac * h(i, j) + g[i] * mgrad[j]) * mg[i];
        }
        grad_psi[j] = acc;
      }
      const double gp_norm = euclid_norm(grad_psi);
      if (!(gp_norm > 0.0) || !std::isfinite(gp_norm)) {
        out.iterations = iter;
        out.message = "stationary residual norm with nonzero gradient (no descent direction)";
        return out;
      }
      const double psi0 = 0.5 * phi0 * phi0;
      double t = std::min(1.0, opts.max_step / gp_norm);
      bool moved = false;
      for (int back = 0; back < 60; ++back) {
        std::vector<double> trial(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - t * grad_psi[i];
        const double phi_t = deflated_norm(trial);
        if (all_finite(trial) && 0.5 * phi_t * phi_t <=
                                     psi0 - opts.armijo_c * t * gp_norm * gp_norm) {
          x = std::move(trial);
          moved = true;
          break;
        }
        t *= opts.backtrack_factor;
      }
      if (!moved) {
        out.iterations = iter;
        out.message = "line search failed to reduce the residual";
        return out;
      }
    }
    g = gradient_at(x);
  }

  out.iterations = opts.max_iterations;
  out.message = "no convergence in " + std::to_string(opts.max_iterations) +
                " iterations; final sup gradient " + std::to_string(sup_norm(g)) +
                ", trace length " + std::to_string(opts.max_iterations);
  return out;
}

NewtonResult to_newton_result(CoreResult&& core) {
  NewtonResult r;
  r.ok = core.ok;
  r.interior = std::move(core.x);
  r.residual_norm = core.residual_norm;
  r.iterations = core.iterations;
  r.message = std::move(core.message);
  return r;
}

Solution make_solution(const Problem& problem, const Matrix& stiffness,
                       std::vector<double> interior) {
  GridFunction y(problem.n, interior);
  Solution s{std::move(y), 0.0, 0.0, Classification::Unclassified};
  s.energy = energy(problem, s.y).total;
  s.residual_norm = sup_norm(residual_stencil(problem, s.y));
  const Matrix h = hessian_from_matrix(stiffness, problem, s.y);
  const Eigensystem eig = jacobi_eigensystem(h);
  const double threshold = 1e-8 * frobenius_norm(h);
  bool any_small = false, any_pos = false, any_neg = false;
  for (double lambda : eig.values) {
    if (std::abs(lambda) <= threshold) any_small = true;
    else if (lambda > 0.0) any_pos = true;
    else any_neg = true;
  }
  if (any_small) s.classification = Classification::Unclassified;
  else if (any_pos && any_neg) s.classification = Classification::Saddle;
  else if (any_pos) s.classification = Classification::Minimizer;
  else s.classification = Classification::Maximizer;
  return s;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void SolverOptions::validate() const {
  if (!(tol_residual > 0.0) || max_iterations < 1 || !(max_step > 0.0) ||
      !(armijo_c > 0.0 && armijo_c < 1.0) ||
      !(backtrack_factor > 0.0 && backtrack_factor < 1.0) || deflation_power < 1 ||
      !(deflation_shift > 0.0) || !(distinct_tol > 0.0) || start_count < 1 ||
      !(start_radius > 0.0)) {
    throw std::invalid_argument("solver options out of range");
  }
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Minimizer: return "minimizer";
    case Classification::Saddle: return "saddle";
    case Classification::Maximizer: return "maximizer";
    case Classification::Unclassified: return "unclassified";
  }
  return "?";
}

NewtonResult newton_solve(const Problem& problem, const GridFunction& y0,
                          const SolverOptions& opts) {
  opts.validate();
  if (problem.n != y0.n()) {
    throw std::invalid_argument("newton_solve dimension mismatch");
  }
  const Matrix stiffness = quadratic_form_matrix(problem);
  std::vector<double> x(y0.interior().begin(), y0.interior().end());
  return to_newton_result(newton_core(problem, stiffness, std::move(x), opts, {}, 0.0));
}

NewtonResult minimize(const Problem& problem, const GridFunction& y0,
                      const SolverOptions& opts) {
  opts.validate();
  if (problem.n != y0.n()) {
    throw std::invalid_argument("minimize dimension mismatch");
  }
  const Matrix stiffness = quadratic_form_matrix(problem);
  std::vector<double> x(y0.interior().begin(), y0.interior().end());

  auto energy_at = [&](std::span<const double> pt) {
    return energy(problem, GridFunction(problem.n, pt)).total;
  };

  NewtonResult fail;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (euclid_norm(x) > 1e8) {
      fail.iterations = iter;
      fail.message = "iterates exceeded norm 1e8: suspected non-coercivity";
      return fail;
    }
    const GridFunction y(problem.n, x);
    std::vector<double> g = gradient_from_matrix(stiffness, problem, y);
    if (!all_finite(g)) {
      fail.iterations = iter;
      fail.message = "non-finite gradient at iteration " + std::to_string(iter);
      return fail;
    }
    if (sup_norm(g) <= 10.0 * opts.tol_residual) break;

    const double j0 = energy_at(x);
    const double gnorm2 = [&] {
      double s = 0.0;
      for (double v : g) s += v * v;
      return s;
    }();
    // Full trial step first; the step clamp is a Newton guard, and descent
    // must be free to run so the divergence check can trip.
    double t = 1.0;
    bool moved = false;
    for (int back = 0; back < 60; ++back) {
      std::vector<double> trial(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - t * g[i];
      if (all_finite(trial) && energy_at(trial) <= j0 - opts.armijo_c * t * gnorm2) {
        x = std::move(trial);
        moved = true;
        break;
      }
      t *= opts.backtrack_factor;
    }
    if (!moved) break;  // at the floating-point floor of the descent; polish
  }

  return to_newton_result(newton_core(problem, stiffness, std::move(x), opts, {}, 0.0));
}

SolutionSet deflated_search(const Problem& problem, const SolverOptions& opts) {
  opts.validate();
  const int n = problem.n;
  const Matrix stiffness = quadratic_form_matrix(problem);
  const bool odd = problem.f.is_odd();

  std::vector<std::vector<double>> found;
  Deflation deflation{&found, opts.deflation_power, opts.deflation_shift};

  SolutionSet set;
  auto try_accept = [&](std::vector<double> candidate) {
    for (const auto& pt : found) {
      if (sup_distance(candidate, pt) <= opts.distinct_tol) return false;
    }
    found.push_back(std::move(candidate));
    return true;
  };

  for (int start = 0; start < opts.start_count; ++start) {
    SplitMix64 rng(SplitMix64::stream_key(opts.seed, static_cast<std::uint64_t>(start)));
    std::vector<double> x0(static_cast<std::size_t>(n));
    for (double& v : x0) v = rng.next_in(-opts.start_radius, opts.start_radius);

    CoreResult res =
        newton_core(problem, stiffness, std::move(x0), opts, deflation, opts.distinct_tol);
    if (!res.ok) {
      ++set.failed_starts;
      continue;
    }
    std::vector<double> point = std::move(res.x);
    std::vector<double> mirror(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) mirror[i] = -point[i];
    if (!try_accept(std::move(point))) {
      ++set.failed_starts;
      continue;
    }
    if (odd) {
      // J is even for odd f, so the mirror of a solution solves too; accept
      // it after its own stencil check.
      const GridFunction my(n, mirror);
      if (sup_norm(residual_stencil(problem, my)) <= opts.tol_residual) {
        try_accept(std::move(mirror));
      }
    }
  }
  set.starts_used = opts.start_count;

  for (auto& pt : found) set.solutions.push_back(make_solution(problem, stiffness, std::move(pt)));
  std::sort(set.solutions.begin(), set.solutions.end(), [](const Solution& a, const Solution& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return lex_less(a.y.interior(), b.y.interior());
  });
  set.deduplicated = true;
  return set;
}

std::vector<GridFunction> distinct_filter(const std::vector<GridFunction>& candidates,
                                          double distinct_tol) {
  std::vector<GridFunction> kept;
  for (const auto& c : candidates) {
    bool fresh = true;
    for (const auto& k : kept) {
      if (sup_distance(c.interior(), k.interior()) <= distinct_tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) kept.push_back(c);
  }
  return kept;
}

Classification classify_critical_point(const Problem& problem, const GridFunction& y) {
  const Matrix stiffness = quadratic_form_matrix(problem);
  std::vector<double> interior(y.interior().begin(), y.interior().end());
  return make_solution(problem, stiffness, std::move(interior)).classification;
}

}  // namespace bvp4
