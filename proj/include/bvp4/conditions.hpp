#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bvp4/grid.hpp"
#include "bvp4/spectra.hpp"

namespace bvp4 {

/// Extended-real limit of f(k, s) / s at 0 or +-infinity. Undefined covers
/// the case where the limit at 0 does not exist (nonzero constant term).
struct ExtendedSlope {
  enum class Kind { Finite, PlusInfinity, MinusInfinity, Undefined };
  Kind kind = Kind::Undefined;
  double value = 0.0;  // meaningful only when Finite

  static ExtendedSlope finite(double v) { return {Kind::Finite, v}; }
  static ExtendedSlope plus_infinity() { return {Kind::PlusInfinity, 0.0}; }
  static ExtendedSlope minus_infinity() { return {Kind::MinusInfinity, 0.0}; }
  static ExtendedSlope undefined() { return {Kind::Undefined, 0.0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_undefined() const { return kind == Kind::Undefined; }
  /// As a double with +-inf for the infinite kinds; NaN when undefined.
  double as_real() const;
};

struct CoefficientExtrema {
  double p_min = 0.0, p_max = 0.0, q_min = 0.0, q_max = 0.0;
};

struct EtaValues {
  double eta_prime = 0.0;  // lambda2 when p_min >= 0, else 16
  double eta = 0.0;        // lambda1 when q_max < 0, else 4
  double xi = 0.0;         // lambda1 when q_min >= 0, else 4
};

struct AlphaValues {
  double alpha1 = 0.0;  // eta(q) q_max - eta'(p) p_min
  double alpha2 = 0.0;  // xi(q) q_min - 16 p_max
  double alpha3 = 0.0;  // min{lambda1 q_min - lambda2 p_max, 4 q_min - lambda2 p_max}
};

/// Every constant appearing in the certified hypotheses, plus the optional
/// tail witnesses.
struct HypothesisConstants {
  double p_min = 0.0, p_max = 0.0, q_min = 0.0, q_max = 0.0;
  double eta_prime = 0.0, eta = 0.0, xi = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
  std::optional<double> sign_threshold_m;  // s f(k,s) >= 0 for |s| >= m
  std::optional<double> odd_tail_S;        // f(k,-s) <= -f(k,s) for s >= S
};

enum class Verdict { Holds, Fails, NotApplicable };

enum class GuaranteedCount {
  NoneCertified,
  AtLeastOne,
  ExactlyOne,
  AtLeastTwo,
  AtLeastTwoN,
};

const char* to_string(Verdict v);
const char* to_string(GuaranteedCount c);

/// One evaluated hypothesis condition. left/right are the compared numbers
/// (+-inf for infinite slopes, NaN when not meaningful); margin is
/// left - right.
struct ConditionCheck {
  std::string name;
  bool satisfied = false;
  bool applicable = true;  // false when an input limit is undefined
  bool verified = true;    // false for sampling-only monotonicity results
  double left = 0.0;
  double right = 0.0;
  double margin = 0.0;
  std::string note;
};

struct TheoremEntry {
  std::string name;
  Verdict verdict = Verdict::Fails;
  GuaranteedCount certifies = GuaranteedCount::NoneCertified;  // when it holds
  std::vector<ConditionCheck> conditions;
  std::vector<std::string> notes;
};

/// Full certification report: all constants, one entry per checked result,
/// and the strongest certified solution count.
struct TheoremReport {
  SpectralBounds bounds;
  HypothesisConstants constants;
  std::vector<TheoremEntry> theorems;
  GuaranteedCount guaranteed = GuaranteedCount::NoneCertified;
  std::vector<std::string> notes;
};

CoefficientExtrema extrema(const Problem& problem);
EtaValues eta_values(const Problem& problem, const SpectralBounds& bounds);
AlphaValues alphas(const HypothesisConstants& constants);

ExtendedSlope slope_at_infinity(const PolyNonlinearity& f, int k);
ExtendedSlope slope_at_minus_infinity(const PolyNonlinearity& f, int k);
ExtendedSlope slope_at_zero(const PolyNonlinearity& f, int k);

/// Witness m > 0 with s f(k,s) >= 0 for |s| >= m and every k, when the
/// tails admit one; validated by sign evaluation before returning.
std::optional<double> sign_condition_witness(const PolyNonlinearity& f);

/// Witness S > 0 with f(k,-s) <= -f(k,s) for s >= S and every k.
std::optional<double> odd_tail_condition(const PolyNonlinearity& f);

bool is_odd(const PolyNonlinearity& f);

enum class Monotonicity { No, Yes, Unverified };

/// Exact for derivative degree <= 2 (discriminant analysis) and for odd
/// derivative degrees (tail sign). Higher even degrees are sampled and never
/// upgraded to Yes.
Monotonicity is_nondecreasing(const PolyNonlinearity& f);

HypothesisConstants hypothesis_constants(const Problem& problem, const SpectralBounds& bounds);

/// Evaluates every certified result literally on the computed constants and
/// aggregates the strongest solution count. Always returns a report.
TheoremReport check_all(const Problem& problem);

}  // namespace bvp4
