#include "bvp4/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bvp4 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

/// Minimum of extended slopes over k with -inf < finite < +inf.
ExtendedSlope min_slope(const std::vector<ExtendedSlope>& slopes) {
  ExtendedSlope best = ExtendedSlope::plus_infinity();
  double best_value = kInf;
  for (const auto& s : slopes) {
    if (s.is_undefined()) return ExtendedSlope::undefined();
    const double v = s.as_real();
    if (v < best_value) {
      best = s;
      best_value = v;
    }
  }
  return best;
}

ExtendedSlope max_slope(const std::vector<ExtendedSlope>& slopes) {
  ExtendedSlope best = ExtendedSlope::minus_infinity();
  double best_value = -kInf;
  for (const auto& s : slopes) {
    if (s.is_undefined()) return ExtendedSlope::undefined();
    const double v = s.as_real();
    if (v > best_value) {
      best = s;
      best_value = v;
    }
  }
  return best;
}

ConditionCheck strict_greater(std::string name, double left, double right) {
  ConditionCheck c;
  c.name = std::move(name);
  c.left = left;
  c.right = right;
  c.margin = left - right;
  c.satisfied = left > right;
  return c;
}

ConditionCheck strict_less(std::string name, double left, double right) {
  ConditionCheck c;
  c.name = std::move(name);
  c.left = left;
  c.right = right;
  c.margin = left - right;
  c.satisfied = left < right;
  return c;
}

ConditionCheck at_least(std::string name, double left, double right) {
  ConditionCheck c;
  c.name = std::move(name);
  c.left = left;
  c.right = right;
  c.margin = left - right;
  c.satisfied = left >= right;
  return c;
}

ConditionCheck at_most(std::string name, double left, double right) {
  ConditionCheck c;
  c.name = std::move(name);
  c.left = left;
  c.right = right;
  c.margin = left - right;
  c.satisfied = left <= right;
  return c;
}

ConditionCheck slope_greater(std::string name, const ExtendedSlope& slope, double right) {
  ConditionCheck c = strict_greater(std::move(name), slope.as_real(), right);
  if (slope.is_undefined()) {
    c.satisfied = false;
    c.applicable = false;
    c.note = "limit does not exist";
  }
  return c;
}

ConditionCheck slope_less(std::string name, const ExtendedSlope& slope, double right) {
  ConditionCheck c = strict_less(std::move(name), slope.as_real(), right);
  if (slope.is_undefined()) {
    c.satisfied = false;
    c.applicable = false;
    c.note = "limit does not exist";
  }
  return c;
}

Verdict verdict_from_conditions(const std::vector<ConditionCheck>& conditions) {
  bool all_ok = true;
  for (const auto& c : conditions) {
    if (!c.applicable) return Verdict::NotApplicable;
    if (!c.satisfied) all_ok = false;
  }
  return all_ok ? Verdict::Holds : Verdict::Fails;
}

int rank(GuaranteedCount c) {
  switch (c) {
    case GuaranteedCount::NoneCertified: return 0;
    case GuaranteedCount::AtLeastOne: return 1;
    case GuaranteedCount::ExactlyOne: return 2;
    case GuaranteedCount::AtLeastTwo: return 3;
    case GuaranteedCount::AtLeastTwoN: return 4;
  }
  return 0;
}

}  // namespace

double ExtendedSlope::as_real() const {
  switch (kind) {
    case Kind::Finite: return value;
    case Kind::PlusInfinity: return kInf;
    case Kind::MinusInfinity: return -kInf;
    case Kind::Undefined: return kNaN;
  }
  return kNaN;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

const char* to_string(GuaranteedCount c) {
  switch (c) {
    case GuaranteedCount::NoneCertified: return "none-certified";
    case GuaranteedCount::AtLeastOne: return ">=1";
    case GuaranteedCount::ExactlyOne: return "exactly 1";
    case GuaranteedCount::AtLeastTwo: return ">=2";
    case GuaranteedCount::AtLeastTwoN: return ">=2N";
  }
  return "?";
}

CoefficientExtrema extrema(const Problem& problem) {
  CoefficientExtrema e;
  e.p_min = *std::min_element(problem.p.begin(), problem.p.end());
  e.p_max = *std::max_element(problem.p.begin(), problem.p.end());
  e.q_min = *std::min_element(problem.q.begin(), problem.q.end());
  e.q_max = *std::max_element(problem.q.begin(), problem.q.end());
  return e;
}

EtaValues eta_values(const Problem& problem, const SpectralBounds& bounds) {
  const CoefficientExtrema e = extrema(problem);
  EtaValues v;
  v.eta_prime = e.p_min >= 0.0 ? bounds.lambda2 : 16.0;
  v.eta = e.q_max < 0.0 ? bounds.lambda1 : 4.0;
  v.xi = e.q_min >= 0.0 ? bounds.lambda1 : 4.0;
  return v;
}

AlphaValues alphas(const HypothesisConstants& c) {
  AlphaValues a;
  a.alpha1 = c.eta * c.q_max - c.eta_prime * c.p_min;
  a.alpha2 = c.xi * c.q_min - 16.0 * c.p_max;
  a.alpha3 = std::min(c.lambda1 * c.q_min - c.lambda2 * c.p_max,
                      4.0 * c.q_min - c.lambda2 * c.p_max);
  return a;
}

ExtendedSlope slope_at_infinity(const PolyNonlinearity& f, int k) {
  const Coeffs& c = f.at(k);
  const int d = poly_degree(c);
  if (d == 0) return ExtendedSlope::finite(0.0);
  if (d == 1) return ExtendedSlope::finite(c[1]);
  return c.back() > 0.0 ? ExtendedSlope::plus_infinity() : ExtendedSlope::minus_infinity();
}

ExtendedSlope slope_at_minus_infinity(const PolyNonlinearity& f, int k) {
  const Coeffs& c = f.at(k);
  const int d = poly_degree(c);
  if (d == 0) return ExtendedSlope::finite(0.0);
  if (d == 1) return ExtendedSlope::finite(c[1]);
  // Sign of c_d s^(d-1) as s -> -inf.
  const bool positive = (d % 2 == 1) ? c.back() > 0.0 : c.back() < 0.0;
  return positive ? ExtendedSlope::plus_infinity() : ExtendedSlope::minus_infinity();
}

ExtendedSlope slope_at_zero(const PolyNonlinearity& f, int k) {
  const Coeffs& c = f.at(k);
  if (c[0] != 0.0) return ExtendedSlope::undefined();
  return ExtendedSlope::finite(c.size() > 1 ? c[1] : 0.0);
}

std::optional<double> sign_condition_witness(const PolyNonlinearity& f) {
  double m = 0.0;
  for (const Coeffs& c : f.coeffs) {
    if (poly_is_zero(c)) {
      m = std::max(m, 1.0);
      continue;
    }
    const int d = poly_degree(c);
    // s f(k,s) has leading term c_d s^(d+1); both tails are nonnegative iff
    // d is odd with c_d > 0.
    if (d % 2 != 1 || c.back() <= 0.0) return std::nullopt;
    m = std::max(m, 1.0 + cauchy_root_bound(c));
  }
  for (const Coeffs& c : f.coeffs) {
    for (double s : {m, -m, 2.0 * m, -2.0 * m}) {
      if (s * poly_eval(c, s) < 0.0) return std::nullopt;
    }
  }
  return m;
}

std::optional<double> odd_tail_condition(const PolyNonlinearity& f) {
  double witness = 0.0;
  for (const Coeffs& c : f.coeffs) {
    const Coeffs even = poly_even_part(c);
    if (poly_is_zero(even)) {
      witness = std::max(witness, 1.0);
      continue;
    }
    // f(k,-s) <= -f(k,s) iff the even part is <= 0; for large s this is
    // decided by the leading even coefficient.
    if (even.back() >= 0.0) return std::nullopt;
    witness = std::max(witness, 1.0 + cauchy_root_bound(even));
  }
  for (const Coeffs& c : f.coeffs) {
    for (double s : {witness, 2.0 * witness, 10.0 * witness}) {
      if (poly_eval(c, -s) > -poly_eval(c, s)) return std::nullopt;
    }
  }
  return witness;
}

bool is_odd(const PolyNonlinearity& f) {
  return f.is_odd();
}

Monotonicity is_nondecreasing(const PolyNonlinearity& f) {
  Monotonicity result = Monotonicity::Yes;
  for (const Coeffs& c : f.coeffs) {
    const Coeffs d = poly_derivative(c);
    if (poly_is_zero(d)) continue;
    const int dd = poly_degree(d);
    if (dd == 0) {
      if (d[0] < 0.0) return Monotonicity::No;
      continue;
    }
    if (dd % 2 == 1) return Monotonicity::No;  // odd-degree derivative is unbounded below
    if (dd == 2) {
      const double disc = d[1] * d[1] - 4.0 * d[2] * d[0];
      if (d[2] > 0.0 && disc <= 0.0) continue;
      return Monotonicity::No;
    }
    // Even degree >= 4: decide the tails exactly, sample the rest.
    if (d.back() < 0.0) return Monotonicity::No;
    const double radius = 1.0 + cauchy_root_bound(d);
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
      const double s = -radius + 2.0 * radius * static_cast<double>(i) /
                                     static_cast<double>(samples - 1);
      if (poly_eval(d, s) < 0.0) return Monotonicity::No;
    }
    result = Monotonicity::Unverified;  // sampling passed, no exact proof
  }
  return result;
}

HypothesisConstants hypothesis_constants(const Problem& problem, const SpectralBounds& bounds) {
  HypothesisConstants c;
  const CoefficientExtrema e = extrema(problem);
  c.p_min = e.p_min;
  c.p_max = e.p_max;
  c.q_min = e.q_min;
  c.q_max = e.q_max;
  const EtaValues eta = eta_values(problem, bounds);
  c.eta_prime = eta.eta_prime;
  c.eta = eta.eta;
  c.xi = eta.xi;
  c.lambda1 = bounds.lambda1;
  c.lambda2 = bounds.lambda2;
  const AlphaValues a = alphas(c);
  c.alpha1 = a.alpha1;
  c.alpha2 = a.alpha2;
  c.alpha3 = a.alpha3;
  c.sign_threshold_m = sign_condition_witness(problem.f);
  c.odd_tail_S = odd_tail_condition(problem.f);
  return c;
}

TheoremReport check_all(const Problem& problem) {
  TheoremReport report;
  report.bounds = spectral_bounds(problem.n);
  report.constants = hypothesis_constants(problem, report.bounds);
  const HypothesisConstants& c = report.constants;

  std::vector<ExtendedSlope> slopes_inf, slopes_zero;
  for (int k = 1; k <= problem.n; ++k) {
    slopes_inf.push_back(slope_at_infinity(problem.f, k));
    slopes_zero.push_back(slope_at_zero(problem.f, k));
  }
  const ExtendedSlope inf_slope = min_slope(slopes_inf);
  const ExtendedSlope zero_slope = max_slope(slopes_zero);
  const bool odd = is_odd(problem.f);
  const Monotonicity mono = is_nondecreasing(problem.f);

  auto sign_witness_check = [&]() {
    ConditionCheck cc;
    cc.name = "s*f(k,s) >= 0 beyond witness m";
    cc.satisfied = c.sign_threshold_m.has_value();
    cc.left = c.sign_threshold_m.value_or(kNaN);
    cc.right = 0.0;
    cc.margin = cc.left;
    if (!cc.satisfied) cc.note = "no finite witness exists for these tails";
    return cc;
  };
  auto odd_tail_check = [&]() {
    ConditionCheck cc;
    cc.name = "f(k,-s) <= -f(k,s) beyond witness S";
    cc.satisfied = c.odd_tail_S.has_value();
    cc.left = c.odd_tail_S.value_or(kNaN);
    cc.right = 0.0;
    cc.margin = cc.left;
    if (!cc.satisfied) cc.note = "even part of f grows positive";
    return cc;
  };
  auto odd_check = [&]() {
    ConditionCheck cc;
    cc.name = "f odd in s";
    cc.satisfied = odd;
    cc.left = odd ? 1.0 : 0.0;
    cc.right = 1.0;
    cc.margin = cc.left - cc.right;
    return cc;
  };
  // Fails against alpha2 as defined but would pass against its sign-flipped
  // variant: worth a note, since that reading certifies a different verdict.
  auto maybe_alpha2_note = [&](TheoremEntry& entry, const ConditionCheck& cc) {
    if (cc.applicable && !cc.satisfied && zero_slope.is_finite()) {
      const double flipped = 16.0 * c.p_max - c.xi * c.q_min;
      if (zero_slope.value < flipped) {
        std::string note =
            "zero-slope condition fails against alpha2 = xi(q)*q_min - 16*p_max = " +
            format_number(c.alpha2) + " (slope " + format_number(zero_slope.value) +
            ") but would hold against the sign-flipped threshold 16*p_max - xi(q)*q_min = " +
            format_number(flipped) + "; the literal alpha2 comparison decides the verdict";
        entry.notes.push_back(note);
        report.notes.push_back(entry.name + ": " + note);
      }
    }
  };

  // Existence through the sign condition and the definiteness margin.
  {
    TheoremEntry entry;
    entry.name = "existence";
    entry.certifies = GuaranteedCount::AtLeastOne;
    entry.conditions.push_back(sign_witness_check());
    entry.conditions.push_back(strict_greater("eta_prime*p_min - eta*q_max > 0",
                                              c.eta_prime * c.p_min - c.eta * c.q_max, 0.0));
    entry.verdict = verdict_from_conditions(entry.conditions);
    if (entry.verdict == Verdict::Holds) {
      for (int k = 1; k <= problem.n; ++k) {
        if (problem.f.at(k)[0] != 0.0) {
          entry.notes.push_back("f(k,0) != 0 at k=" + std::to_string(k) +
                                ": the certified solution is nonzero");
          break;
        }
      }
    }
    report.theorems.push_back(std::move(entry));
  }

  // Uniqueness: existence conditions plus monotone f and the strict
  // convexity margin.
  {
    TheoremEntry entry;
    entry.name = "uniqueness";
    entry.certifies = GuaranteedCount::ExactlyOne;
    entry.conditions.push_back(sign_witness_check());
    entry.conditions.push_back(strict_greater("eta_prime*p_min - eta*q_max > 0",
                                              c.eta_prime * c.p_min - c.eta * c.q_max, 0.0));
    {
      ConditionCheck cc;
      cc.name = "f nondecreasing in s";
      cc.satisfied = mono == Monotonicity::Yes;
      cc.verified = mono != Monotonicity::Unverified;
      cc.left = cc.satisfied ? 1.0 : 0.0;
      cc.right = 1.0;
      cc.margin = cc.left - cc.right;
      if (mono == Monotonicity::Unverified) {
        cc.note = "sampling found no decrease but exactness is unavailable; not certified";
      }
      entry.conditions.push_back(std::move(cc));
    }
    entry.conditions.push_back(
        strict_greater("p_min*eta_prime > q_max*eta", c.p_min * c.eta_prime, c.q_max * c.eta));
    entry.verdict = verdict_from_conditions(entry.conditions);
    report.theorems.push_back(std::move(entry));
  }

  // Existence through the slope-at-infinity condition. Reported for
  // information; the aggregate count and exit status come from the entries
  // above and below.
  {
    TheoremEntry entry;
    entry.name = "slope_existence";
    entry.certifies = GuaranteedCount::AtLeastOne;
    entry.conditions.push_back(slope_greater("min slope at infinity > alpha1", inf_slope, c.alpha1));
    entry.conditions.push_back(odd_tail_check());
    entry.verdict = verdict_from_conditions(entry.conditions);
    report.theorems.push_back(std::move(entry));
  }
  const Verdict slope_existence_verdict = report.theorems.back().verdict;

  // Two solutions via the mountain-pass geometry.
  {
    TheoremEntry entry;
    entry.name = "two_solutions";
    entry.certifies = GuaranteedCount::AtLeastTwo;
    if (problem.n < 2) {
      ConditionCheck cc;
      cc.name = "dim E > 1";
      cc.satisfied = false;
      cc.applicable = false;
      cc.left = static_cast<double>(problem.n);
      cc.right = 1.0;
      cc.margin = cc.left - cc.right;
      cc.note = "requires N >= 2";
      entry.conditions.push_back(std::move(cc));
      entry.verdict = Verdict::NotApplicable;
    } else {
      entry.conditions.push_back(
          strict_greater("dim E > 1", static_cast<double>(problem.n), 1.0));
      entry.conditions.push_back(strict_greater("p_max > 0", c.p_max, 0.0));
      entry.conditions.push_back(
          slope_greater("min slope at infinity > alpha1", inf_slope, c.alpha1));
      entry.conditions.push_back(odd_tail_check());
      ConditionCheck zero_cc = slope_less("max slope at zero < alpha2", zero_slope, c.alpha2);
      entry.conditions.push_back(zero_cc);
      entry.verdict = verdict_from_conditions(entry.conditions);
      maybe_alpha2_note(entry, zero_cc);
    }
    report.theorems.push_back(std::move(entry));
  }

  // 2N distinct solutions, nonnegative p branch.
  {
    TheoremEntry entry;
    entry.name = "multiplicity_p_nonneg";
    entry.certifies = GuaranteedCount::AtLeastTwoN;
    entry.conditions.push_back(odd_check());
    entry.conditions.push_back(at_least("p_min >= 0", c.p_min, 0.0));
    entry.conditions.push_back(
        slope_greater("min slope at infinity > alpha1", inf_slope, c.alpha1));
    ConditionCheck zero_cc = slope_less("max slope at zero < alpha2", zero_slope, c.alpha2);
    entry.conditions.push_back(zero_cc);
    if (!odd) {
      entry.verdict = Verdict::Fails;
    } else {
      entry.verdict = verdict_from_conditions(entry.conditions);
    }
    maybe_alpha2_note(entry, zero_cc);
    report.theorems.push_back(std::move(entry));
  }

  // 2N distinct solutions, nonpositive p branch. The infinity slope is
  // compared against alpha2 here, exactly as the hypothesis is stated.
  {
    TheoremEntry entry;
    entry.name = "multiplicity_p_nonpos";
    entry.certifies = GuaranteedCount::AtLeastTwoN;
    entry.conditions.push_back(odd_check());
    entry.conditions.push_back(at_most("p_max <= 0", c.p_max, 0.0));
    entry.conditions.push_back(
        slope_greater("min slope at infinity > alpha2", inf_slope, c.alpha2));
    entry.conditions.push_back(slope_less("max slope at zero < alpha3", zero_slope, c.alpha3));
    if (!odd) {
      entry.verdict = Verdict::Fails;
    } else {
      entry.verdict = verdict_from_conditions(entry.conditions);
    }
    report.theorems.push_back(std::move(entry));
  }

  // Aggregate: slope_existence is informational (see its entry); the count
  // and the certification status come from the other five.
  GuaranteedCount best = GuaranteedCount::NoneCertified;
  for (const auto& entry : report.theorems) {
    if (entry.name == "slope_existence") continue;
    if (entry.verdict == Verdict::Holds && rank(entry.certifies) > rank(best)) {
      best = entry.certifies;
    }
  }
  report.guaranteed = best;
  if (best == GuaranteedCount::NoneCertified && slope_existence_verdict == Verdict::Holds) {
    report.notes.push_back(
        "slope_existence holds (at least one solution exists) but is reported "
        "separately and does not set the certified count");
  }
  return report;
}

}  // namespace bvp4
