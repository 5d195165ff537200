#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvp4/grid.hpp"

namespace bvp4 {

/// Output of the exhaustive critical-point scan. Points are interior value
/// tuples, Newton-refined and pairwise distinct at 1e-6, sorted
/// lexicographically.
struct OracleResult {
  std::vector<std::vector<double>> critical_points;
  double scan_radius = 0.0;
  double grid_step = 0.0;
  bool refined = true;
};

/// Evaluates the gradient on the full grid of interior tuples in [-R, R]^N
/// (N <= 3), seeds Newton refinements from cells with a sign change in every
/// gradient component (plus a residual-norm local-minimum fallback), and
/// returns the deduplicated refined points. Rejects scans above 1e8 cells.
OracleResult brute_force_oracle(const Problem& problem, double scan_radius, double grid_step);

/// Report of a sampled-inequality suite. Ratios are the difference-quotient
/// sums divided by the squared norm, tracked over all nonzero samples.
struct BoundSuiteReport {
  bool pass = true;
  std::size_t samples_checked = 0;
  std::size_t violations = 0;
  double max_ratio_first = 0.0;   // sup of sum (D y)^2 / ||y||^2
  double max_ratio_second = 0.0;  // sup of sum (D2 y)^2 / ||y||^2
  double min_ratio_first = 0.0;
  double min_ratio_second = 0.0;
  std::vector<std::string> failures;
};

/// Checks sum (D y(k-1))^2 <= 4 ||y||^2 and sum (D2 y(k-2))^2 <= 16 ||y||^2
/// on random grid functions for every N up to n_max (slack 1e-9).
BoundSuiteReport difference_upper_bound_suite(int n_max, int samples, std::uint64_t seed);

/// Checks the lambda1/lambda2 lower bounds on the same sampling, with the
/// smallest-eigenvalue eigenvectors added so the minimum ratio attains each
/// bound (within 10%).
BoundSuiteReport eigenvalue_lower_bound_suite(int n_max, int samples, std::uint64_t seed);

struct GradientSuiteReport {
  bool pass = true;
  std::size_t cases = 0;
  double max_fd_error = 0.0;     // finite-difference vs directional derivative
  double max_cross_error = 0.0;  // matrix form vs stencil form
  std::vector<std::string> failures;
};

/// Random problems and directions: central finite differences of the energy
/// against the gradient, and the matrix form against the stencil form.
GradientSuiteReport gradient_fd_suite(int samples, std::uint64_t seed);

}  // namespace bvp4
