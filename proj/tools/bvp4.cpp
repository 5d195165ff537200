#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bvp4/conditions.hpp"
#include "bvp4/harness.hpp"
#include "bvp4/problem_io.hpp"
#include "bvp4/solvers.hpp"
#include "bvp4/spectra.hpp"

namespace {

using bvp4::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoneCertified = 3;
constexpr int kExitNoSolutions = 4;
constexpr int kExitSuiteFailure = 5;

void print_check_summary(const bvp4::TheoremReport& report) {
  std::fprintf(stderr, "%-28s %-15s %s\n", "result", "verdict", "certifies");
  for (const auto& entry : report.theorems) {
    std::fprintf(stderr, "%-28s %-15s %s\n", entry.name.c_str(),
                 bvp4::to_string(entry.verdict),
                 entry.verdict == bvp4::Verdict::Holds ? bvp4::to_string(entry.certifies) : "-");
  }
  std::fprintf(stderr, "guaranteed count: %s\n", bvp4::to_string(report.guaranteed));
  for (const auto& note : report.notes) std::fprintf(stderr, "note: %s\n", note.c_str());
}

int run_check(const std::string& path) {
  const bvp4::Problem problem = bvp4::load_problem(path);
  const bvp4::TheoremReport report = bvp4::check_all(problem);
  std::cout << bvp4::check_report_to_json(problem, report).dump(2) << "\n";
  print_check_summary(report);
  return report.guaranteed == bvp4::GuaranteedCount::NoneCertified ? kExitNoneCertified
                                                                   : kExitOk;
}

int run_solve(const std::string& path, const bvp4::SolverOptions& opts, long long max_solutions,
              const std::string& csv_path) {
  const bvp4::Problem problem = bvp4::load_problem(path);
  const bvp4::TheoremReport report = bvp4::check_all(problem);
  bvp4::SolutionSet set = bvp4::deflated_search(problem, opts);
  if (max_solutions > 0 && set.solutions.size() > static_cast<std::size_t>(max_solutions)) {
    set.solutions.erase(set.solutions.begin() + max_solutions, set.solutions.end());
  }
  std::cout << bvp4::solve_report_to_json(problem, report, set, opts).dump(2) << "\n";
  std::fprintf(stderr, "found %zu distinct solutions from %d starts (%d failed starts)\n",
               set.solutions.size(), set.starts_used, set.failed_starts);
  print_check_summary(report);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "cannot open CSV output path: %s\n", csv_path.c_str());
      return kExitInput;
    }
    out << bvp4::solutions_to_csv(set, problem.n);
  }
  return set.solutions.empty() ? kExitNoSolutions : kExitOk;
}

int run_spectra(int n) {
  const bvp4::SpectralBounds bounds = bvp4::spectral_bounds(n);
  std::printf("N = %d\n", n);
  std::printf("lambda1 = %.12g\n", bounds.lambda1);
  std::printf("lambda2 = %.12g\n", bounds.lambda2);
  std::printf("lambda1_closed_form = %.12g\n", bounds.lambda1_closed_form);
  std::printf("closed_form_abs_error = %.12g\n",
              std::abs(bounds.lambda1 - bounds.lambda1_closed_form));
  return kExitOk;
}

int run_verify(int n_max, int samples, std::uint64_t seed) {
  bool pass = true;

  const bvp4::BoundSuiteReport upper = bvp4::difference_upper_bound_suite(n_max, samples, seed);
  std::printf("difference upper bounds: %s (%zu samples, %zu violations)\n",
              upper.pass ? "pass" : "FAIL", upper.samples_checked, upper.violations);
  std::printf("  max ratio vs 4:  %.12g\n", upper.max_ratio_first);
  std::printf("  max ratio vs 16: %.12g\n", upper.max_ratio_second);
  pass = pass && upper.pass;

  const bvp4::BoundSuiteReport lower = bvp4::eigenvalue_lower_bound_suite(n_max, samples, seed);
  std::printf("eigenvalue lower bounds: %s (%zu samples, %zu violations)\n",
              lower.pass ? "pass" : "FAIL", lower.samples_checked, lower.violations);
  std::printf("  min ratio (first differences):  %.12g\n", lower.min_ratio_first);
  std::printf("  min ratio (second differences): %.12g\n", lower.min_ratio_second);
  pass = pass && lower.pass;

  const bvp4::GradientSuiteReport grad = bvp4::gradient_fd_suite(samples, seed);
  std::printf("gradient checks: %s (%zu cases)\n", grad.pass ? "pass" : "FAIL", grad.cases);
  std::printf("  max finite-difference error: %.12g\n", grad.max_fd_error);
  std::printf("  max cross-form error:        %.12g\n", grad.max_cross_error);
  pass = pass && grad.pass;

  for (const auto* report : {&upper, &lower}) {
    for (const auto& f : report->failures) std::fprintf(stderr, "failure: %s\n", f.c_str());
  }
  for (const auto& f : grad.failures) std::fprintf(stderr, "failure: %s\n", f.c_str());
  return pass ? kExitOk : kExitSuiteFailure;
}

int run_oracle(const std::string& path, double radius, double step) {
  const bvp4::Problem problem = bvp4::load_problem(path);
  const bvp4::OracleResult oracle = bvp4::brute_force_oracle(problem, radius, step);
  std::cout << bvp4::oracle_to_json(problem, oracle).dump(2) << "\n";
  std::fprintf(stderr, "oracle found %zu critical points\n", oracle.critical_points.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and certification toolkit for fourth-order discrete "
               "Dirichlet boundary value problems"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Evaluate every certified hypothesis set");
  check->add_option("path", check_path, "problem JSON file")->required();

  std::string solve_path, csv_path;
  bvp4::SolverOptions opts;
  long long starts = opts.start_count;
  long long max_solutions = 0;
  std::uint64_t seed = opts.seed;
  double radius = opts.start_radius, tol = opts.tol_residual;
  auto* solve = app.add_subcommand("solve", "Find distinct solutions by deflated multistart");
  solve->add_option("path", solve_path, "problem JSON file")->required();
  solve->add_option("--starts", starts, "number of starts")->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--radius", radius, "start sampling radius")->check(CLI::PositiveNumber);
  solve->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-solutions", max_solutions, "limit reported solutions")
      ->check(CLI::PositiveNumber);
  solve->add_option("--csv", csv_path, "write solution table to this path");

  int spectra_n = 0;
  auto* spectra = app.add_subcommand("spectra", "Print the spectral lower-bound constants");
  spectra->add_option("N", spectra_n, "problem size")->required();

  int n_max = 50, samples = 10000;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the sampled inequality suites");
  verify->add_option("--n-max", n_max, "largest N")->check(CLI::PositiveNumber);
  verify->add_option("--samples", samples, "samples per N")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "random seed");

  std::string oracle_path;
  double oracle_radius = 10.0, oracle_step = 0.05;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive critical-point scan (N <= 3)");
  oracle->add_option("path", oracle_path, "problem JSON file")->required();
  oracle->add_option("--radius", oracle_radius, "scan radius")->check(CLI::PositiveNumber);
  oracle->add_option("--step", oracle_step, "grid step")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "valid subcommands: check, solve, spectra, verify, oracle\n");
    std::fprintf(stderr,
                 "valid solve flags: --starts --seed --radius --tol --max-solutions --csv\n");
    std::fprintf(stderr, "valid verify flags: --n-max --samples --seed\n");
    std::fprintf(stderr, "valid oracle flags: --radius --step\n");
    return kExitInput;
  }

  try {
    if (check->parsed()) return run_check(check_path);
    if (solve->parsed()) {
      opts.start_count = static_cast<int>(starts);
      opts.seed = seed;
      opts.start_radius = radius;
      opts.tol_residual = tol;
      return run_solve(solve_path, opts, max_solutions, csv_path);
    }
    if (spectra->parsed()) {
      if (spectra_n < 1) {
        std::fprintf(stderr, "N must be at least 1, got %d\n", spectra_n);
        return kExitInput;
      }
      return run_spectra(spectra_n);
    }
    if (verify->parsed()) return run_verify(n_max, samples, verify_seed);
    if (oracle->parsed()) return run_oracle(oracle_path, oracle_radius, oracle_step);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
