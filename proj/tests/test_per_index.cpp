#include <doctest.h>

#include <cmath>
#include <vector>

#include "bvp4/conditions.hpp"
#include "bvp4/energy.hpp"
#include "bvp4/harness.hpp"
#include "bvp4/rng.hpp"
#include "bvp4/solvers.hpp"

using namespace bvp4;

namespace {

Problem per_index_problem(int n, std::vector<Coeffs> lists) {
  return Problem(n, std::vector<double>(static_cast<std::size_t>(n) + 2, 1.0),
                 std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0),
                 PolyNonlinearity::per_index(std::move(lists)));
}

const TheoremEntry& entry(const TheoremReport& report, const std::string& name) {
  for (const auto& e : report.theorems) {
    if (e.name == name) return e;
  }
  REQUIRE(false);
  return report.theorems.front();
}

}  // namespace

TEST_CASE("per-index slopes aggregate over k") {
  SUBCASE("the largest zero-slope decides the alpha2 comparison") {
    // alpha2 = -15 at n=2 with unit coefficients. Slopes at zero are -20
    // and -16; the max (-16) still clears the threshold.
    const Problem ok = per_index_problem(
        2, {{0.0, -20.0, 0.0, 1.0 / 3.0}, {0.0, -16.0, 0.0, 1.0 / 3.0}});
    const TheoremReport ok_report = check_all(ok);
    CHECK(entry(ok_report, "multiplicity_p_nonneg").verdict == Verdict::Holds);
    CHECK(ok_report.guaranteed == GuaranteedCount::AtLeastTwoN);

    // Raising one index's slope to -10 pushes the max above alpha2.
    const Problem bad = per_index_problem(
        2, {{0.0, -20.0, 0.0, 1.0 / 3.0}, {0.0, -10.0, 0.0, 1.0 / 3.0}});
    const TheoremReport bad_report = check_all(bad);
    CHECK(entry(bad_report, "multiplicity_p_nonneg").verdict == Verdict::Fails);
    CHECK(bad_report.guaranteed != GuaranteedCount::AtLeastTwoN);
  }
  SUBCASE("one undefined zero slope makes the comparison not-applicable") {
    const Problem problem = per_index_problem(2, {{0.0, -20.0, 0.0, 1.0}, {0.5, -20.0}});
    const TheoremReport report = check_all(problem);
    CHECK(entry(report, "two_solutions").verdict == Verdict::NotApplicable);
  }
  SUBCASE("the smallest infinity slope decides the alpha1 comparison") {
    // Slopes at infinity: 3 (linear) and +inf; min = 3 > alpha1 = 2 holds,
    // but with the linear slope lowered to 1 the minimum drops below.
    const Problem ok = per_index_problem(2, {{0.0, 3.0}, {0.0, 1.0, 0.0, 1.0}});
    const TheoremReport ok_report = check_all(ok);
    bool found = false;
    for (const auto& cond : entry(ok_report, "slope_existence").conditions) {
      if (cond.name == "min slope at infinity > alpha1") {
        found = true;
        CHECK(cond.satisfied);
        CHECK(cond.left == 3.0);
      }
    }
    CHECK(found);

    const Problem low = per_index_problem(2, {{0.0, 1.0}, {0.0, 1.0, 0.0, 1.0}});
    const TheoremReport low_report = check_all(low);
    CHECK(entry(low_report, "slope_existence").verdict == Verdict::Fails);
  }
  SUBCASE("oddness requires every index to be odd") {
    CHECK(is_odd(PolyNonlinearity::per_index({{0.0, 1.0}, {0.0, 2.0, 0.0, 1.0}})));
    CHECK_FALSE(is_odd(PolyNonlinearity::per_index({{0.0, 1.0}, {0.0, 2.0, 1.0}})));
  }
  SUBCASE("witnesses cover every index") {
    // Both indices admit a sign witness; the returned m covers the larger
    // Cauchy bound (the -50 pulldown).
    const auto f =
        PolyNonlinearity::per_index({{0.0, -50.0, 0.0, 1.0}, {0.0, 1.0}});
    const auto m = sign_condition_witness(f);
    REQUIRE(m.has_value());
    CHECK(*m >= 51.0);
    // One index with a negative leading odd coefficient spoils it.
    CHECK_FALSE(sign_condition_witness(
        PolyNonlinearity::per_index({{0.0, 1.0}, {0.0, 0.0, 0.0, -1.0}})));
  }
}

TEST_CASE("per-index energy and gradient") {
  SUBCASE("gradient forms agree on random per-index problems") {
    SplitMix64 rng(51);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(8));
      std::vector<double> p(static_cast<std::size_t>(n) + 2);
      std::vector<double> q(static_cast<std::size_t>(n) + 1);
      for (double& v : p) v = rng.next_in(-5.0, 5.0);
      for (double& v : q) v = rng.next_in(-5.0, 5.0);
      std::vector<Coeffs> lists;
      for (int k = 0; k < n; ++k) {
        Coeffs c(1 + rng.next_below(4));
        for (double& v : c) v = rng.next_in(-1.0, 1.0);
        lists.push_back(std::move(c));
      }
      const Problem problem(n, std::move(p), std::move(q),
                            PolyNonlinearity::per_index(std::move(lists)));
      std::vector<double> interior(static_cast<std::size_t>(n));
      for (double& v : interior) v = rng.next_in(-5.0, 5.0);
      const GridFunction y(n, interior);
      const std::vector<double> g = gradient_quadratic_form(problem, y);
      const std::vector<double> r = residual_stencil(problem, y);
      for (std::size_t i = 0; i < g.size(); ++i) {
        worst = std::max(worst, std::abs(g[i] - r[i]));
      }
    }
    CHECK(worst <= 1e-12);
  }
  SUBCASE("search and oracle agree on an asymmetric two-well problem") {
    // Index 1 has a deep double well, index 2 stays monotone.
    const Problem problem =
        per_index_problem(2, {{0.0, -30.0, 0.0, 1.0 / 3.0}, {0.0, 2.0}});
    SolverOptions opts;
    opts.start_radius = 12.0;
    const SolutionSet set = deflated_search(problem, opts);
    const OracleResult oracle = brute_force_oracle(problem, 12.0, 0.05);
    REQUIRE(set.solutions.size() == oracle.critical_points.size());
    for (const auto& pt : oracle.critical_points) {
      bool matched = false;
      for (const auto& s : set.solutions) {
        double dist = 0.0;
        for (std::size_t i = 0; i < pt.size(); ++i) {
          dist = std::max(dist, std::abs(pt[i] - s.y.interior()[i]));
        }
        matched = matched || dist <= 1e-6;
      }
      CHECK(matched);
    }
    // Both index polynomials are odd, so the nonzero pair comes mirrored.
    CHECK(set.solutions.size() == 3);
  }
}
