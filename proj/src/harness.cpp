#include "bvp4/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bvp4/energy.hpp"
#include "bvp4/rng.hpp"
#include "bvp4/solvers.hpp"
#include "bvp4/spectra.hpp"

namespace bvp4 {

namespace {

/// Sum (D y(k-1))^2 for k = 1..N+1 and sum (D2 y(k-2))^2 for k = 1..N+2,
/// computed through the grid operators rather than the Gram matrices.
struct DifferenceSums {
  double first = 0.0;
  double second = 0.0;
};

DifferenceSums difference_sums(const GridFunction& y) {
  DifferenceSums s;
  for (double v : forward_diff(y.values())) s.first += v * v;
  for (double w : second_diff(y.values())) s.second += w * w;
  return s;
}

GridFunction random_grid_function(int n, SplitMix64& rng, double radius) {
  std::vector<double> interior(static_cast<std::size_t>(n));
  for (double& v : interior) v = rng.next_in(-radius, radius);
  return GridFunction(n, interior);
}

std::vector<double> smallest_eigenvector(const Matrix& s) {
  const Eigensystem eig = jacobi_eigensystem(s, true);
  std::vector<double> v(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) v[i] = eig.vectors(i, 0);
  return v;
}

}  // namespace

OracleResult brute_force_oracle(const Problem& problem, double scan_radius, double grid_step) {
  const int n = problem.n;
  if (n > 3) {
    throw std::invalid_argument("oracle supports N <= 3, got N=" + std::to_string(n));
  }
  if (!(scan_radius > 0.0) || !(grid_step > 0.0)) {
    throw std::invalid_argument("oracle needs positive radius and step");
  }
  const double cells_per_axis = 2.0 * scan_radius / grid_step + 1.0;
  const double budget = std::pow(cells_per_axis, n);
  if (budget > 1e8) {
    throw std::invalid_argument("oracle cell budget exceeded: scan needs about " +
                                std::to_string(budget) + " cells, limit is 1e8");
  }

  // Axis nodes; the endpoint lands on +R when 2R/h is integral.
  std::vector<double> axis;
  for (long long j = 0;; ++j) {
    const double x = -scan_radius + static_cast<double>(j) * grid_step;
    if (x > scan_radius + 1e-12 * std::max(1.0, scan_radius)) break;
    axis.push_back(std::min(x, scan_radius));
  }
  const std::size_t m = axis.size();
  std::size_t total_nodes = 1;
  for (int d = 0; d < n; ++d) total_nodes *= m;

  const Matrix stiffness = quadratic_form_matrix(problem);
  auto gradient_at = [&](const std::vector<double>& pt) {
    std::vector<double> g = matvec(stiffness, pt);
    for (int k = 1; k <= n; ++k) {
      g[static_cast<std::size_t>(k - 1)] +=
          poly_eval(problem.f.at(k), pt[static_cast<std::size_t>(k - 1)]);
    }
    return g;
  };

  auto node_point = [&](std::size_t flat) {
    std::vector<double> pt(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      pt[static_cast<std::size_t>(d)] = axis[flat % m];
      flat /= m;
    }
    return pt;
  };
  auto normsq_at = [&](std::size_t flat) {
    const std::vector<double> g = gradient_at(node_point(flat));
    double s = 0.0;
    for (double v : g) s += v * v;
    return s;
  };

  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  stride[0] = 1;
  for (int d = 1; d < n; ++d) {
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d - 1)] * m;
  }

  // Streamed scan; values are recomputed per cell rather than stored, so the
  // 1e8-cell budget never turns into a gigabyte field.
  double max_normsq = 0.0;
  for (std::size_t idx = 0; idx < total_nodes; ++idx) {
    max_normsq = std::max(max_normsq, normsq_at(idx));
  }

  std::vector<std::vector<double>> seeds;
  // Cells whose vertices change sign in every gradient component.
  const std::size_t corners = static_cast<std::size_t>(1) << n;
  std::vector<std::size_t> cell_index(static_cast<std::size_t>(n), 0);
  bool done = m < 2;
  while (!done) {
    std::size_t base = 0;
    for (int d = 0; d < n; ++d) {
      base += cell_index[static_cast<std::size_t>(d)] * stride[static_cast<std::size_t>(d)];
    }
    std::vector<double> lo(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(n),
                           -std::numeric_limits<double>::infinity());
    for (std::size_t corner = 0; corner < corners; ++corner) {
      std::size_t idx = base;
      for (int d = 0; d < n; ++d) {
        if (corner & (static_cast<std::size_t>(1) << d)) {
          idx += stride[static_cast<std::size_t>(d)];
        }
      }
      const std::vector<double> g = gradient_at(node_point(idx));
      for (int comp = 0; comp < n; ++comp) {
        lo[static_cast<std::size_t>(comp)] =
            std::min(lo[static_cast<std::size_t>(comp)], g[static_cast<std::size_t>(comp)]);
        hi[static_cast<std::size_t>(comp)] =
            std::max(hi[static_cast<std::size_t>(comp)], g[static_cast<std::size_t>(comp)]);
      }
    }
    bool all_components_change = true;
    for (int comp = 0; comp < n; ++comp) {
      if (!(lo[static_cast<std::size_t>(comp)] <= 0.0 &&
            hi[static_cast<std::size_t>(comp)] >= 0.0)) {
        all_components_change = false;
      }
    }
    if (all_components_change) {
      std::vector<double> center(static_cast<std::size_t>(n));
      for (int d = 0; d < n; ++d) {
        center[static_cast<std::size_t>(d)] =
            axis[cell_index[static_cast<std::size_t>(d)]] + 0.5 * grid_step;
      }
      seeds.push_back(std::move(center));
    }
    // Advance the cell multi-index.
    int d = 0;
    while (d < n) {
      if (++cell_index[static_cast<std::size_t>(d)] < m - 1) break;
      cell_index[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    done = d == n;
  }

  // Fallback: nodes that are local minima of ||g||^2 among axis neighbours
  // and small against the global maximum. Catches tangential zeros that
  // never flip a component sign.
  for (std::size_t idx = 0; idx < total_nodes; ++idx) {
    const double here = normsq_at(idx);
    if (here > 1e-2 * max_normsq) continue;
    bool local_min = true;
    std::size_t rest = idx;
    for (int d = 0; d < n && local_min; ++d) {
      const std::size_t coord = rest % m;
      rest /= m;
      if (coord > 0 && normsq_at(idx - stride[static_cast<std::size_t>(d)]) < here) {
        local_min = false;
      }
      if (coord + 1 < m && normsq_at(idx + stride[static_cast<std::size_t>(d)]) < here) {
        local_min = false;
      }
    }
    if (local_min) seeds.push_back(node_point(idx));
  }

  SolverOptions opts;
  OracleResult out;
  out.scan_radius = scan_radius;
  out.grid_step = grid_step;
  for (const auto& seed : seeds) {
    const NewtonResult res = newton_solve(problem, GridFunction(n, seed), opts);
    if (!res.ok || res.residual_norm > 1e-10) continue;
    bool fresh = true;
    for (const auto& kept : out.critical_points) {
      double dist = 0.0;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        dist = std::max(dist, std::abs(kept[i] - res.interior[i]));
      }
      if (dist <= 1e-6) {
        fresh = false;
        break;
      }
    }
    if (fresh) out.critical_points.push_back(res.interior);
  }
  std::sort(out.critical_points.begin(), out.critical_points.end());
  return out;
}

BoundSuiteReport difference_upper_bound_suite(int n_max, int samples, std::uint64_t seed) {
  BoundSuiteReport report;
  report.min_ratio_first = std::numeric_limits<double>::infinity();
  report.min_ratio_second = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    SplitMix64 rng(SplitMix64::stream_key(seed, static_cast<std::uint64_t>(n)));
    for (int s = 0; s < samples; ++s) {
      const GridFunction y = random_grid_function(n, rng, 10.0);
      const double nsq = [&] {
        double acc = 0.0;
        for (double v : y.interior()) acc += v * v;
        return acc;
      }();
      if (nsq == 0.0) continue;  // 0/0 ratio guard
      const DifferenceSums sums = difference_sums(y);
      ++report.samples_checked;
      report.max_ratio_first = std::max(report.max_ratio_first, sums.first / nsq);
      report.max_ratio_second = std::max(report.max_ratio_second, sums.second / nsq);
      report.min_ratio_first = std::min(report.min_ratio_first, sums.first / nsq);
      report.min_ratio_second = std::min(report.min_ratio_second, sums.second / nsq);
      const bool ok1 = sums.first <= 4.0 * nsq + 1e-9;
      const bool ok2 = sums.second <= 16.0 * nsq + 1e-9;
      if (!ok1 || !ok2) {
        ++report.violations;
        report.pass = false;
        if (report.failures.size() < 10) {
          report.failures.push_back("upper bound violated at n=" + std::to_string(n) +
                                    " sample " + std::to_string(s));
        }
      }
    }
  }
  return report;
}

BoundSuiteReport eigenvalue_lower_bound_suite(int n_max, int samples, std::uint64_t seed) {
  BoundSuiteReport report;
  report.min_ratio_first = std::numeric_limits<double>::infinity();
  report.min_ratio_second = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const SpectralBounds bounds = spectral_bounds(n);
    SplitMix64 rng(SplitMix64::stream_key(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(n)));

    double min_first = std::numeric_limits<double>::infinity();
    double min_second = min_first;
    auto check = [&](const GridFunction& y) {
      double nsq = 0.0;
      for (double v : y.interior()) nsq += v * v;
      if (nsq == 0.0) return;
      const DifferenceSums sums = difference_sums(y);
      ++report.samples_checked;
      min_first = std::min(min_first, sums.first / nsq);
      min_second = std::min(min_second, sums.second / nsq);
      report.max_ratio_first = std::max(report.max_ratio_first, sums.first / nsq);
      report.max_ratio_second = std::max(report.max_ratio_second, sums.second / nsq);
      const bool ok1 = sums.first >= bounds.lambda1 * nsq - 1e-9;
      const bool ok2 = sums.second >= bounds.lambda2 * nsq - 1e-9;
      if (!ok1 || !ok2) {
        ++report.violations;
        report.pass = false;
        if (report.failures.size() < 10) {
          report.failures.push_back("lower bound violated at n=" + std::to_string(n));
        }
      }
    };

    for (int s = 0; s < samples; ++s) check(random_grid_function(n, rng, 10.0));
    // Augment with the Gram eigenvectors so the minima attain the bounds.
    check(GridFunction(n, smallest_eigenvector(gram(build_V(n)))));
    check(GridFunction(n, smallest_eigenvector(gram(build_W(n)))));

    if (min_first > 1.1 * bounds.lambda1 || min_second > 1.1 * bounds.lambda2) {
      report.pass = false;
      report.failures.push_back("minimum ratio misses the bound by over 10% at n=" +
                                std::to_string(n));
    }
    report.min_ratio_first = std::min(report.min_ratio_first, min_first);
    report.min_ratio_second = std::min(report.min_ratio_second, min_second);
  }
  return report;
}

GradientSuiteReport gradient_fd_suite(int samples, std::uint64_t seed) {
  GradientSuiteReport report;
  SplitMix64 rng(SplitMix64::stream_key(seed, 0xfd));
  for (int s = 0; s < samples; ++s) {
    const int n = 1 + static_cast<int>(rng.next_below(10));
    std::vector<double> p(static_cast<std::size_t>(n) + 2);
    std::vector<double> q(static_cast<std::size_t>(n) + 1);
    for (double& v : p) v = rng.next_in(-5.0, 5.0);
    for (double& v : q) v = rng.next_in(-5.0, 5.0);
    const int degree = static_cast<int>(rng.next_below(6));
    Coeffs coeffs(static_cast<std::size_t>(degree) + 1);
    for (double& c : coeffs) c = rng.next_in(-5.0, 5.0);
    const Problem problem(n, std::move(p), std::move(q), PolyNonlinearity::shared(coeffs));

    std::vector<double> yv(static_cast<std::size_t>(n)), hv(static_cast<std::size_t>(n));
    for (double& v : yv) v = rng.next_in(-2.0, 2.0);
    for (double& v : hv) v = rng.next_in(-2.0, 2.0);
    const GridFunction y(n, yv);

    const std::vector<double> g = gradient_quadratic_form(problem, y);
    const std::vector<double> r = residual_stencil(problem, y);
    for (std::size_t i = 0; i < g.size(); ++i) {
      report.max_cross_error = std::max(report.max_cross_error, std::abs(g[i] - r[i]));
    }

    const double eps = 1e-5;
    std::vector<double> plus(yv), minus(yv);
    for (std::size_t i = 0; i < yv.size(); ++i) {
      plus[i] += eps * hv[i];
      minus[i] -= eps * hv[i];
    }
    const double j0 = energy(problem, y).total;
    const double fd = (energy(problem, GridFunction(n, plus)).total -
                       energy(problem, GridFunction(n, minus)).total) /
                      (2.0 * eps);
    double directional = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) directional += g[i] * hv[i];
    const double err = std::abs(fd - directional);
    report.max_fd_error = std::max(report.max_fd_error, err);
    ++report.cases;

    const bool cross_ok = report.max_cross_error <= 1e-12;
    const bool fd_ok = err <= 1e-6 * (1.0 + std::abs(j0));
    if (!cross_ok || !fd_ok) {
      report.pass = false;
      if (report.failures.size() < 10) {
        report.failures.push_back("gradient check failed on case " + std::to_string(s));
      }
    }
  }
  return report;
}

}  // namespace bvp4
