#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvp4/energy.hpp"
#include "bvp4/grid.hpp"

namespace bvp4 {

struct SolverOptions {
  double tol_residual = 1e-10;   // sup norm of the gradient
  int max_iterations = 200;
  double max_step = 1e3;         // step-length clamp
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int deflation_power = 2;
  double deflation_shift = 1.0;
  double distinct_tol = 1e-6;    // sup-norm separation between solutions
  int start_count = 64;
  double start_radius = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Classification { Minimizer, Saddle, Maximizer, Unclassified };

const char* to_string(Classification c);

struct Solution {
  GridFunction y;
  double energy = 0.0;
  double residual_norm = 0.0;  // sup norm of the stencil residual
  Classification classification = Classification::Unclassified;
};

/// Distinct critical points found by the multistart search, sorted ascending
/// by energy with lexicographic interior tie-break.
struct SolutionSet {
  std::vector<Solution> solutions;
  int starts_used = 0;
  bool deduplicated = true;
  int failed_starts = 0;
};

struct NewtonResult {
  bool ok = false;
  std::vector<double> interior;  // converged point when ok
  double residual_norm = 0.0;    // sup norm of the stencil residual when ok
  int iterations = 0;
  std::string message;
};

/// Damped Newton iteration on the gradient: solve H d = -g by a symmetric
/// factorization, backtrack until the residual norm drops, and fall back to
/// gradient descent on 1/2 ||g||^2 when the factorization or the step fails.
/// Converged points are re-verified with the stencil residual.
NewtonResult newton_solve(const Problem& problem, const GridFunction& y0,
                          const SolverOptions& opts = {});

/// Armijo gradient descent on the energy down to 10x the residual tolerance,
/// then Newton polish. Fails with a non-coercivity diagnostic when the
/// iterates run away.
NewtonResult minimize(const Problem& problem, const GridFunction& y0,
                      const SolverOptions& opts = {});

/// Deflated multistart search: deterministic starts in the sup-norm ball,
/// Newton residuals multiplied by a shifted-inverse-power factor around the
/// solutions found so far, mirror completion for odd nonlinearities, and
/// canonical ordering of the result.
SolutionSet deflated_search(const Problem& problem, const SolverOptions& opts = {});

/// Greedy dedup in input order: keeps a candidate iff its sup-norm distance
/// to every kept one exceeds distinct_tol.
std::vector<GridFunction> distinct_filter(const std::vector<GridFunction>& candidates,
                                          double distinct_tol);

/// Hessian-eigenvalue classification with threshold 1e-8 times the Hessian
/// Frobenius norm; any eigenvalue inside the threshold means Unclassified.
Classification classify_critical_point(const Problem& problem, const GridFunction& y);

}  // namespace bvp4
