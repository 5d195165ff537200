#pragma once

#include <string>

#include <json.hpp>

#include "bvp4/conditions.hpp"
#include "bvp4/grid.hpp"
#include "bvp4/harness.hpp"
#include "bvp4/solvers.hpp"

namespace bvp4 {

using Json = nlohmann::ordered_json;

/// Parses a problem document:
///   {"N": 2, "p": [...N+2...], "q": [...N+1...],
///    "f": {"shared": [c0,...]} | {"per_k": [[...], ...]}}
/// Unknown members, wrong lengths and non-finite numbers are rejected with a
/// descriptive message; syntax errors carry a line:column position.
Problem parse_problem(const std::string& text);

Problem load_problem(const std::string& path);

Json problem_to_json(const Problem& problem);

/// Certification report: echoed problem, spectral data, constants, one entry
/// per checked result, and the certified count.
Json check_report_to_json(const Problem& problem, const TheoremReport& report);

/// Extends a check report with the solver output.
Json solve_report_to_json(const Problem& problem, const TheoremReport& report,
                          const SolutionSet& set, const SolverOptions& opts);

Json oracle_to_json(const Problem& problem, const OracleResult& oracle);

/// One row per (solution, k) with k = -1..N+2; boundary rows included as
/// zeros. Locale-independent formatting, "\n" newlines.
std::string solutions_to_csv(const SolutionSet& set, int n);

/// Shortest round-trip decimal formatting (std::to_chars).
std::string format_double(double v);

}  // namespace bvp4
