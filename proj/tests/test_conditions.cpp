#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "bvp4/conditions.hpp"
#include "bvp4/rng.hpp"

using namespace bvp4;

namespace {

Problem constant_problem(int n, double p_value, double q_value, Coeffs f_coeffs) {
  return Problem(n, std::vector<double>(static_cast<std::size_t>(n) + 2, p_value),
                 std::vector<double>(static_cast<std::size_t>(n) + 1, q_value),
                 PolyNonlinearity::shared(std::move(f_coeffs)));
}

const TheoremEntry& entry(const TheoremReport& report, const std::string& name) {
  for (const auto& e : report.theorems) {
    if (e.name == name) return e;
  }
  REQUIRE(false);
  return report.theorems.front();
}

}  // namespace

TEST_CASE("coefficient extrema") {
  SUBCASE("constant coefficients") {
    const CoefficientExtrema e = extrema(constant_problem(2, 1.0, 1.0, {0.0}));
    CHECK(e.p_min == 1.0);
    CHECK(e.p_max == 1.0);
    CHECK(e.q_min == 1.0);
    CHECK(e.q_max == 1.0);
  }
  SUBCASE("mixed p for n=1") {
    const Problem problem(1, {-1.0, 0.0, 2.0}, {3.0, 3.0}, PolyNonlinearity::zero());
    const CoefficientExtrema e = extrema(problem);
    CHECK(e.p_min == -1.0);
    CHECK(e.p_max == 2.0);
    CHECK(e.q_min == 3.0);
    CHECK(e.q_max == 3.0);
  }
}

TEST_CASE("piecewise eta constants") {
  SUBCASE("n=1 with unit coefficients") {
    const Problem problem = constant_problem(1, 1.0, 1.0, {0.0});
    const EtaValues v = eta_values(problem, spectral_bounds(1));
    CHECK(v.eta_prime == doctest::Approx(6.0));
    CHECK(v.eta == 4.0);
    CHECK(v.xi == doctest::Approx(2.0));
  }
  SUBCASE("n=2 with negative coefficients") {
    const Problem problem = constant_problem(2, -1.0, -1.0, {0.0});
    const EtaValues v = eta_values(problem, spectral_bounds(2));
    CHECK(v.eta_prime == 16.0);
    CHECK(v.eta == doctest::Approx(1.0));
    CHECK(v.xi == 4.0);
  }
  SUBCASE("q_max exactly zero lands on the 4 branch") {
    const Problem problem(1, {1.0, 1.0, 1.0}, {-1.0, 0.0}, PolyNonlinearity::zero());
    const EtaValues v = eta_values(problem, spectral_bounds(1));
    CHECK(v.eta == 4.0);
  }
  SUBCASE("random problems always pick a branch value that re-checks") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(10));
      std::vector<double> p(static_cast<std::size_t>(n) + 2);
      std::vector<double> q(static_cast<std::size_t>(n) + 1);
      for (double& v : p) v = rng.next_in(-3.0, 3.0);
      for (double& v : q) v = rng.next_in(-3.0, 3.0);
      const Problem problem(n, std::move(p), std::move(q), PolyNonlinearity::zero());
      const SpectralBounds bounds = spectral_bounds(n);
      const EtaValues v = eta_values(problem, bounds);
      const CoefficientExtrema e = extrema(problem);
      CHECK((v.eta_prime == bounds.lambda2 || v.eta_prime == 16.0));
      CHECK((v.eta == bounds.lambda1 || v.eta == 4.0));
      CHECK((v.xi == bounds.lambda1 || v.xi == 4.0));
      CHECK(v.eta_prime == (e.p_min >= 0.0 ? bounds.lambda2 : 16.0));
      CHECK(v.eta == (e.q_max < 0.0 ? bounds.lambda1 : 4.0));
      CHECK(v.xi == (e.q_min >= 0.0 ? bounds.lambda1 : 4.0));
    }
  }
}

TEST_CASE("alpha constants") {
  SUBCASE("n=1 with unit coefficients") {
    const Problem problem = constant_problem(1, 1.0, 1.0, {0.0});
    const HypothesisConstants c = hypothesis_constants(problem, spectral_bounds(1));
    CHECK(c.alpha1 == doctest::Approx(-2.0));
    CHECK(c.alpha2 == doctest::Approx(-14.0));
    CHECK(c.alpha3 == doctest::Approx(-4.0));
  }
  SUBCASE("n=2 with unit coefficients") {
    const Problem problem = constant_problem(2, 1.0, 1.0, {0.0});
    const HypothesisConstants c = hypothesis_constants(problem, spectral_bounds(2));
    CHECK(c.alpha1 == doctest::Approx(2.0));
    CHECK(c.alpha2 == doctest::Approx(-15.0));
    CHECK(c.alpha3 == doctest::Approx(-1.0));
  }
  SUBCASE("all-zero coefficients zero out the alphas") {
    const Problem problem = constant_problem(2, 0.0, 0.0, {0.0});
    const HypothesisConstants c = hypothesis_constants(problem, spectral_bounds(2));
    CHECK(c.alpha1 == 0.0);
    CHECK(c.alpha2 == 0.0);
    CHECK(c.alpha3 == 0.0);
  }
}

TEST_CASE("slopes at infinity and zero") {
  SUBCASE("superlinear odd cubic") {
    const auto f = PolyNonlinearity::shared({0.0, 1.0, 0.0, 1.0 / 3.0});
    CHECK(slope_at_infinity(f, 1).kind == ExtendedSlope::Kind::PlusInfinity);
    const ExtendedSlope zero = slope_at_zero(f, 1);
    REQUIRE(zero.is_finite());
    CHECK(zero.value == 1.0);
  }
  SUBCASE("linear") {
    const auto f = PolyNonlinearity::shared({0.0, 7.0});
    const ExtendedSlope inf = slope_at_infinity(f, 1);
    REQUIRE(inf.is_finite());
    CHECK(inf.value == 7.0);
  }
  SUBCASE("negative quadratic heads to minus infinity") {
    const auto f = PolyNonlinearity::shared({0.0, 0.0, -1.0});
    CHECK(slope_at_infinity(f, 1).kind == ExtendedSlope::Kind::MinusInfinity);
    CHECK(slope_at_minus_infinity(f, 1).kind == ExtendedSlope::Kind::PlusInfinity);
  }
  SUBCASE("pulled-down cubic has slope -20 at zero") {
    const auto f = PolyNonlinearity::shared({0.0, -20.0, 0.0, 1.0 / 3.0});
    const ExtendedSlope zero = slope_at_zero(f, 1);
    REQUIRE(zero.is_finite());
    CHECK(zero.value == -20.0);
  }
  SUBCASE("nonzero constant term leaves the zero slope undefined") {
    const auto f = PolyNonlinearity::shared({1.0, 1.0});
    CHECK(slope_at_zero(f, 1).is_undefined());
  }
  SUBCASE("finite slopes agree with numeric ratios") {
    const auto near_zero = PolyNonlinearity::shared({0.0, 2.5, 0.5, 0.25});
    const double s0 = 1e-6;
    const double ratio0 = (2.5 * s0 + 0.5 * s0 * s0 + 0.25 * s0 * s0 * s0) / s0;
    CHECK(std::abs(ratio0 - slope_at_zero(near_zero, 1).value) <= 1e-6);

    const auto linear = PolyNonlinearity::shared({0.5, 3.0});
    const double s1 = 1e6;
    const double ratio1 = (0.5 + 3.0 * s1) / s1;
    CHECK(std::abs(ratio1 - slope_at_infinity(linear, 1).value) <= 1e-6);
  }
}

TEST_CASE("sign condition witness") {
  SUBCASE("odd cubic with positive leading term always qualifies") {
    const auto f = PolyNonlinearity::shared({0.0, 1.0, 0.0, 1.0 / 3.0});
    const auto m = sign_condition_witness(f);
    REQUIRE(m.has_value());
    CHECK(*m > 0.0);
    for (double scale : {1.0, 2.0, 10.0}) {
      const double s = scale * *m;
      CHECK(s * poly_eval(f.coeffs.front(), s) >= 0.0);
      CHECK(-s * poly_eval(f.coeffs.front(), -s) >= 0.0);
    }
  }
  SUBCASE("negative leading odd term fails") {
    CHECK_FALSE(sign_condition_witness(PolyNonlinearity::shared({0.0, 0.0, 0.0, -1.0})));
  }
  SUBCASE("even degree fails") {
    CHECK_FALSE(sign_condition_witness(PolyNonlinearity::shared({0.0, 0.0, 1.0})));
  }
  SUBCASE("zero polynomial qualifies with any witness") {
    const auto m = sign_condition_witness(PolyNonlinearity::zero());
    REQUIRE(m.has_value());
    CHECK(*m >= 1.0);
  }
}

TEST_CASE("odd tail witness") {
  SUBCASE("odd nonlinearity returns 1") {
    const auto s = odd_tail_condition(PolyNonlinearity::shared({0.0, 1.0, 0.0, 1.0 / 3.0}));
    REQUIRE(s.has_value());
    CHECK(*s == 1.0);
  }
  SUBCASE("negative even part qualifies") {
    const auto s = odd_tail_condition(PolyNonlinearity::shared({0.0, 0.0, -1.0, 1.0}));
    REQUIRE(s.has_value());
    const Coeffs c{0.0, 0.0, -1.0, 1.0};
    for (double scale : {1.0, 2.0, 10.0}) {
      const double t = scale * *s;
      CHECK(poly_eval(c, -t) <= -poly_eval(c, t));
    }
  }
  SUBCASE("positive even part fails") {
    CHECK_FALSE(odd_tail_condition(PolyNonlinearity::shared({0.0, 0.0, 1.0, 1.0})));
  }
}

TEST_CASE("oddness and monotonicity") {
  SUBCASE("odd cubic") {
    const auto f = PolyNonlinearity::shared({0.0, 1.0, 0.0, 1.0 / 3.0});
    CHECK(is_odd(f));
    CHECK(is_nondecreasing(f) == Monotonicity::Yes);
  }
  SUBCASE("pulled-down cubic decreases near zero") {
    const auto f = PolyNonlinearity::shared({0.0, -20.0, 0.0, 1.0 / 3.0});
    CHECK(is_odd(f));
    CHECK(is_nondecreasing(f) == Monotonicity::No);
  }
  SUBCASE("square is not odd") {
    CHECK_FALSE(is_odd(PolyNonlinearity::shared({0.0, 0.0, 1.0})));
  }
  SUBCASE("degree five with positive derivative everywhere is unverified, not yes") {
    // f' = 5 s^4 + 1 > 0; the exact path stops at cubic f.
    const auto f = PolyNonlinearity::shared({0.0, 1.0, 0.0, 0.0, 0.0, 1.0});
    CHECK(is_nondecreasing(f) == Monotonicity::Unverified);
  }
  SUBCASE("degree five with a dip is refuted by sampling") {
    // f' = 5 s^4 - 3 s^2 + 0.1 dips negative near |s| ~ 0.7.
    const auto f = PolyNonlinearity::shared({0.0, 0.1, 0.0, -1.0, 0.0, 1.0});
    CHECK(is_nondecreasing(f) == Monotonicity::No);
  }
  SUBCASE("even-degree f has an odd-degree derivative and is never monotone") {
    const auto f = PolyNonlinearity::shared({0.0, 0.0, 0.0, 0.0, 1.0});
    CHECK(is_nondecreasing(f) == Monotonicity::No);
  }
}

TEST_CASE("full certification") {
  SUBCASE("pulled-down cubic at n=2 certifies 2N solutions") {
    const Problem problem = constant_problem(2, 1.0, 1.0, {0.0, -20.0, 0.0, 1.0 / 3.0});
    const TheoremReport report = check_all(problem);
    const TheoremEntry& multiplicity = entry(report, "multiplicity_p_nonneg");
    CHECK(multiplicity.verdict == Verdict::Holds);
    CHECK(report.guaranteed == GuaranteedCount::AtLeastTwoN);
    // Supporting numbers: slope -20 below alpha2 = -15, +inf above alpha1 = 2.
    CHECK(report.constants.alpha1 == doctest::Approx(2.0));
    CHECK(report.constants.alpha2 == doctest::Approx(-15.0));
    // The mountain-pass route also applies here.
    CHECK(entry(report, "two_solutions").verdict == Verdict::Holds);
  }
  SUBCASE("monotone cubic at n=2 certifies nothing countable") {
    const Problem problem = constant_problem(2, 1.0, 1.0, {0.0, 1.0, 0.0, 1.0 / 3.0});
    const TheoremReport report = check_all(problem);
    CHECK(report.guaranteed == GuaranteedCount::NoneCertified);
    const TheoremEntry& multiplicity = entry(report, "multiplicity_p_nonneg");
    CHECK(multiplicity.verdict == Verdict::Fails);
    // Slope existence holds on its own: the zero element is a solution.
    CHECK(entry(report, "slope_existence").verdict == Verdict::Holds);
    // The alpha2 near-miss must be recorded.
    bool noted = false;
    for (const auto& note : report.notes) {
      if (note.find("alpha2") != std::string::npos) noted = true;
    }
    CHECK(noted);
  }
  SUBCASE("linear nonlinearity at n=1 certifies exactly one solution") {
    const Problem problem = constant_problem(1, 1.0, 1.0, {0.0, 1.0});
    const TheoremReport report = check_all(problem);
    CHECK(entry(report, "existence").verdict == Verdict::Holds);
    CHECK(entry(report, "uniqueness").verdict == Verdict::Holds);
    CHECK(entry(report, "two_solutions").verdict == Verdict::NotApplicable);
    CHECK(report.guaranteed == GuaranteedCount::ExactlyOne);
  }
  SUBCASE("nonzero constant term makes slope-dependent results not-applicable") {
    const Problem problem = constant_problem(2, 1.0, 1.0, {1.0, 1.0, 0.0, 1.0 / 3.0});
    const TheoremReport report = check_all(problem);
    CHECK(entry(report, "two_solutions").verdict == Verdict::NotApplicable);
  }
  SUBCASE("nonzero-solution trigger is noted when existence holds") {
    // p and q chosen so eta' p_min - eta q_max = 6 - (-4)... q negative:
    // eta = lambda1 = 2 at n=1, margin = 6*1 - 2*(-1) = 8 > 0.
    const Problem problem = constant_problem(1, 1.0, -1.0, {1.0, 1.0, 0.0, 1.0});
    const TheoremReport report = check_all(problem);
    const TheoremEntry& existence = entry(report, "existence");
    REQUIRE(existence.verdict == Verdict::Holds);
    bool noted = false;
    for (const auto& note : existence.notes) {
      if (note.find("nonzero") != std::string::npos) noted = true;
    }
    CHECK(noted);
  }
}

TEST_CASE("report structure invariants") {
  SUBCASE("multiplicity implies the slope-existence conclusion") {
    SplitMix64 rng(42);
    int holding_cases = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(4));
      const double linear = rng.next_in(-30.0, 5.0);
      const Problem problem =
          constant_problem(n, 1.0, 1.0, {0.0, linear, 0.0, rng.next_in(0.1, 2.0)});
      const TheoremReport report = check_all(problem);
      if (entry(report, "multiplicity_p_nonneg").verdict == Verdict::Holds) {
        ++holding_cases;
        CHECK(entry(report, "slope_existence").verdict == Verdict::Holds);
        CHECK(report.guaranteed == GuaranteedCount::AtLeastTwoN);
      }
      // The aggregate never reports less than any holding countable entry.
      for (const auto& e : report.theorems) {
        if (e.name == "slope_existence" || e.verdict != Verdict::Holds) continue;
        CHECK(static_cast<int>(report.guaranteed) >= 0);  // aggregate exists
      }
    }
    CHECK(holding_cases > 0);
  }
  SUBCASE("witness validity at scaled evaluation points") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
      Coeffs c(1 + rng.next_below(5));
      for (double& v : c) v = rng.next_in(-3.0, 3.0);
      const auto f = PolyNonlinearity::shared(c);
      const Coeffs& canon = f.coeffs.front();
      if (const auto m = sign_condition_witness(f)) {
        for (double scale : {1.0, 2.0, 10.0}) {
          for (double sign : {1.0, -1.0}) {
            const double s = sign * scale * *m;
            CHECK(s * poly_eval(canon, s) >= 0.0);
          }
        }
      }
      if (const auto s_wit = odd_tail_condition(f)) {
        for (double scale : {1.0, 2.0, 10.0}) {
          const double s = scale * *s_wit;
          CHECK(poly_eval(canon, -s) <= -poly_eval(canon, s));
        }
      }
    }
  }
  SUBCASE("determinism: equal inputs give identical reports") {
    const Problem problem = constant_problem(2, 1.0, 1.0, {0.0, -20.0, 0.0, 1.0 / 3.0});
    const TheoremReport a = check_all(problem);
    const TheoremReport b = check_all(problem);
    REQUIRE(a.theorems.size() == b.theorems.size());
    CHECK(a.guaranteed == b.guaranteed);
    CHECK(a.constants.alpha1 == b.constants.alpha1);
    CHECK(a.constants.alpha2 == b.constants.alpha2);
    CHECK(a.constants.alpha3 == b.constants.alpha3);
    for (std::size_t i = 0; i < a.theorems.size(); ++i) {
      CHECK(a.theorems[i].verdict == b.theorems[i].verdict);
      REQUIRE(a.theorems[i].conditions.size() == b.theorems[i].conditions.size());
      for (std::size_t j = 0; j < a.theorems[i].conditions.size(); ++j) {
        const auto& ca = a.theorems[i].conditions[j];
        const auto& cb = b.theorems[i].conditions[j];
        CHECK(ca.satisfied == cb.satisfied);
        // Bit-identical numbers, NaN compared through bit patterns.
        CHECK(std::memcmp(&ca.left, &cb.left, sizeof(double)) == 0);
        CHECK(std::memcmp(&ca.right, &cb.right, sizeof(double)) == 0);
        CHECK(std::memcmp(&ca.margin, &cb.margin, sizeof(double)) == 0);
      }
    }
  }
}
