#include "bvp4/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bvp4 {

namespace {

[[noreturn]] void reject(const std::string& message) {
  throw std::invalid_argument("problem file: " + message);
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double number_member(const Json& value, const std::string& where) {
  if (!value.is_number()) reject(where + " must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) reject(where + " is not finite");
  return v;
}

std::vector<double> number_array(const Json& value, std::size_t expected,
                                 const std::string& where) {
  if (!value.is_array()) reject(where + " must be an array");
  if (value.size() != expected) {
    reject(where + " must have length " + std::to_string(expected) + ", got " +
           std::to_string(value.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_member(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void require_members(const Json& object, std::initializer_list<const char*> allowed,
                     const std::string& where) {
  for (const auto& [key, _] : object.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) known = true;
    }
    if (!known) reject("unknown member \"" + key + "\" in " + where);
  }
}

/// Doubles as JSON numbers when finite, strings otherwise (JSON has no inf).
Json json_real(double v) {
  if (std::isfinite(v)) return Json(v);
  if (std::isnan(v)) return Json("nan");
  return Json(v > 0 ? "+inf" : "-inf");
}

Json coeffs_to_json(const Coeffs& c) {
  Json arr = Json::array();
  for (double v : c) arr.push_back(v);
  return arr;
}

Json condition_to_json(const ConditionCheck& c) {
  Json j;
  j["name"] = c.name;
  j["satisfied"] = c.satisfied;
  j["applicable"] = c.applicable;
  j["verified"] = c.verified;
  j["left"] = json_real(c.left);
  j["right"] = json_real(c.right);
  j["margin"] = json_real(c.margin);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json solution_to_json(const Solution& s) {
  Json j;
  Json interior = Json::array();
  for (double v : s.y.interior()) interior.push_back(v);
  j["interior"] = interior;
  j["energy"] = s.energy;
  j["residual_norm"] = s.residual_norm;
  j["classification"] = to_string(s.classification);
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Problem parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    reject("syntax error at line " + std::to_string(line) + ", column " +
           std::to_string(col) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    reject(std::string("cannot read document: ") + e.what());
  }
  if (!doc.is_object()) reject("top level must be an object");
  require_members(doc, {"N", "p", "q", "f"}, "the top-level object");
  if (!doc.contains("N") || !doc.contains("p") || !doc.contains("q") || !doc.contains("f")) {
    reject("members N, p, q, f are all required");
  }

  if (!doc["N"].is_number_integer()) reject("N must be an integer");
  const long long n_raw = doc["N"].get<long long>();
  if (n_raw < 1 || n_raw > 100000) reject("N must be in 1..100000, got " + std::to_string(n_raw));
  const int n = static_cast<int>(n_raw);

  std::vector<double> p = number_array(doc["p"], static_cast<std::size_t>(n) + 2, "p");
  std::vector<double> q = number_array(doc["q"], static_cast<std::size_t>(n) + 1, "q");

  const Json& f = doc["f"];
  if (!f.is_object()) reject("f must be an object");
  require_members(f, {"shared", "per_k"}, "f");
  if (f.contains("shared") == f.contains("per_k")) {
    reject("f must have exactly one of \"shared\" or \"per_k\"");
  }

  PolyNonlinearity nonlinearity = PolyNonlinearity::zero();
  if (f.contains("shared")) {
    const Json& arr = f["shared"];
    if (!arr.is_array() || arr.empty()) reject("f.shared must be a nonempty array");
    std::vector<double> c = number_array(arr, arr.size(), "f.shared");
    nonlinearity = PolyNonlinearity::shared(std::move(c));
  } else {
    const Json& lists = f["per_k"];
    if (!lists.is_array()) reject("f.per_k must be an array of arrays");
    if (lists.size() != static_cast<std::size_t>(n)) {
      reject("f.per_k must have exactly N=" + std::to_string(n) + " lists, got " +
             std::to_string(lists.size()));
    }
    std::vector<Coeffs> all;
    for (std::size_t k = 0; k < lists.size(); ++k) {
      const Json& arr = lists[k];
      if (!arr.is_array() || arr.empty()) {
        reject("f.per_k[" + std::to_string(k) + "] must be a nonempty array");
      }
      all.push_back(number_array(arr, arr.size(), "f.per_k[" + std::to_string(k) + "]"));
    }
    nonlinearity = PolyNonlinearity::per_index(std::move(all));
  }

  return Problem(n, std::move(p), std::move(q), std::move(nonlinearity));
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open problem file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

Json problem_to_json(const Problem& problem) {
  Json j;
  j["N"] = problem.n;
  j["p"] = problem.p;
  j["q"] = problem.q;
  Json f;
  if (problem.f.mode == PolyNonlinearity::Mode::Shared) {
    f["shared"] = coeffs_to_json(problem.f.coeffs.front());
  } else {
    Json lists = Json::array();
    for (const auto& c : problem.f.coeffs) lists.push_back(coeffs_to_json(c));
    f["per_k"] = lists;
  }
  j["f"] = f;
  return j;
}

Json check_report_to_json(const Problem& problem, const TheoremReport& report) {
  Json j;
  j["problem"] = problem_to_json(problem);

  Json spectral;
  spectral["N"] = report.bounds.n;
  spectral["lambda1"] = report.bounds.lambda1;
  spectral["lambda2"] = report.bounds.lambda2;
  Json closed;
  closed["lambda1_closed_form"] = report.bounds.lambda1_closed_form;
  closed["abs_error"] = std::abs(report.bounds.lambda1 - report.bounds.lambda1_closed_form);
  spectral["closed_form_check"] = closed;
  j["spectral"] = spectral;

  const HypothesisConstants& c = report.constants;
  Json constants;
  constants["p_min"] = c.p_min;
  constants["p_max"] = c.p_max;
  constants["q_min"] = c.q_min;
  constants["q_max"] = c.q_max;
  constants["eta_prime"] = c.eta_prime;
  constants["eta"] = c.eta;
  constants["xi"] = c.xi;
  constants["alpha1"] = c.alpha1;
  constants["alpha2"] = c.alpha2;
  constants["alpha3"] = c.alpha3;
  constants["lambda1"] = c.lambda1;
  constants["lambda2"] = c.lambda2;
  constants["sign_threshold_m"] =
      c.sign_threshold_m ? Json(*c.sign_threshold_m) : Json(nullptr);
  constants["odd_tail_S"] = c.odd_tail_S ? Json(*c.odd_tail_S) : Json(nullptr);
  constants["eigenvalue_tolerance"] = 1e-10;
  j["constants"] = constants;

  Json theorems = Json::array();
  for (const auto& entry : report.theorems) {
    Json t;
    t["name"] = entry.name;
    t["verdict"] = to_string(entry.verdict);
    t["certifies"] = to_string(entry.verdict == Verdict::Holds ? entry.certifies
                                                               : GuaranteedCount::NoneCertified);
    Json conditions = Json::array();
    for (const auto& cond : entry.conditions) conditions.push_back(condition_to_json(cond));
    t["conditions"] = conditions;
    Json failed = Json::array();
    for (const auto& cond : entry.conditions) {
      if (!cond.satisfied || !cond.applicable || !cond.verified) failed.push_back(cond.name);
    }
    t["failed_conditions"] = failed;
    t["notes"] = entry.notes;
    theorems.push_back(t);
  }
  j["theorems"] = theorems;
  j["guaranteed_count"] = to_string(report.guaranteed);
  j["notes"] = report.notes;
  return j;
}

Json solve_report_to_json(const Problem& problem, const TheoremReport& report,
                          const SolutionSet& set, const SolverOptions& opts) {
  Json j = check_report_to_json(problem, report);
  Json solutions = Json::array();
  for (const auto& s : set.solutions) solutions.push_back(solution_to_json(s));
  j["solutions"] = solutions;
  j["starts_used"] = set.starts_used;
  j["failed_starts"] = set.failed_starts;
  j["deduplicated"] = set.deduplicated;
  j["seed"] = opts.seed;
  return j;
}

Json oracle_to_json(const Problem& problem, const OracleResult& oracle) {
  Json j;
  j["problem"] = problem_to_json(problem);
  j["scan_radius"] = oracle.scan_radius;
  j["grid_step"] = oracle.grid_step;
  j["refined"] = oracle.refined;
  Json solutions = Json::array();
  for (const auto& pt : oracle.critical_points) {
    const GridFunction y(problem.n, pt);
    Json item;
    Json interior = Json::array();
    for (double v : pt) interior.push_back(v);
    item["interior"] = interior;
    item["energy"] = energy(problem, y).total;
    item["residual_norm"] = sup_norm(residual_stencil(problem, y));
    item["classification"] = to_string(classify_critical_point(problem, y));
    solutions.push_back(item);
  }
  j["solutions"] = solutions;
  return j;
}

std::string solutions_to_csv(const SolutionSet& set, int n) {
  std::string out = "solution_index,k,y_k\n";
  for (std::size_t idx = 0; idx < set.solutions.size(); ++idx) {
    const GridFunction& y = set.solutions[idx].y;
    for (int k = -1; k <= n + 2; ++k) {
      out += std::to_string(idx);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(y.value(k));
      out += '\n';
    }
  }
  return out;
}

}  // namespace bvp4
