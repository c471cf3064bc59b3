#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "shiftlift/graph.hpp"
#include "shiftlift/interlacing.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/polynomial.hpp"
#include "shiftlift/search.hpp"
#include "shiftlift/spectral.hpp"

namespace shiftlift {

using Json = nlohmann::ordered_json;

// --- graphs -------------------------------------------------------------------

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  Json j;
  j["n"] = g.n();
  j["edges"] = std::move(edges);
  if (const auto& bp = g.bipartition())
    j["bipartition"] = {bp->left, bp->right};
  else
    j["bipartition"] = nullptr;
  return j;
}

inline Graph graph_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("graph JSON: edge must be [u, v]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<Bipartition> bp;
    if (j.contains("bipartition") && !j["bipartition"].is_null()) {
      const auto& b = j["bipartition"];
      if (!b.is_array() || b.size() != 2)
        throw InputError("graph JSON: bipartition must be two vertex lists");
      bp = Bipartition{b[0].get<std::vector<Vertex>>(), b[1].get<std::vector<Vertex>>()};
    }
    return Graph(n, std::move(edges), std::move(bp));
  } catch (const Json::exception& e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
}

/// "n m" header, then one "u v" line per edge.
inline std::string to_edgelist(const Graph& g) {
  std::ostringstream os;
  os << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph graph_from_edgelist(const std::string& text) {
  std::istringstream is(text);
  int n = 0, m = 0;
  if (!(is >> n >> m)) throw InputError("edge list: missing \"n m\" header");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(is >> u >> v))
      throw InputError("edge list: expected " + std::to_string(m) + " edges, got " +
                       std::to_string(i));
    edges.emplace_back(u, v);
  }
  std::string extra;
  if (is >> extra) throw InputError("edge list: trailing content after " + std::to_string(m) + " edges");
  return Graph(n, std::move(edges));
}

/// JSON when the text starts with '{', otherwise an edge list.
inline Graph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("graph JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return graph_from_edgelist(text);
}

// --- shifts, polynomials, spectra --------------------------------------------

inline Json to_json(const ShiftAssignment& s) {
  Json j;
  j["k"] = s.k();
  j["shifts"] = s.shifts();
  return j;
}

inline ShiftAssignment shifts_from_json(const Json& j) {
  try {
    return ShiftAssignment(j.at("k").get<int>(), j.at("shifts").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("shifts JSON: ") + e.what());
  }
}

/// [[re, im], ...] ascending degree.
inline Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& z : p.coefficients()) out.push_back({z.real(), z.imag()});
  return out;
}

inline Polynomial polynomial_from_json(const Json& j) {
  std::vector<Complex> c;
  for (const auto& pair : j) c.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return Polynomial(std::move(c));
}

inline Json to_json(const Spectrum& s) { return s.eigenvalues; }

inline Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// --- certificates and results -----------------------------------------------

inline Json to_json(const Certificate& c) {
  Json j;
  j["k"] = c.assignment.k();
  j["shifts"] = c.assignment.shifts();
  j["lambda_new_max"] = c.lambda_new_max;
  j["bound"] = c.bound;
  j["epsilon"] = c.epsilon;
  j["verdict"] = c.pass ? "pass" : "fail";
  j["base_hash"] = c.base_hash;
  j["d"] = c.d;
  if (c.background) j["b"] = c.background->shifts();
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.assignment =
        ShiftAssignment(j.at("k").get<int>(), j.at("shifts").get<std::vector<int>>());
    c.lambda_new_max = j.at("lambda_new_max").get<double>();
    c.bound = j.at("bound").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.pass = j.at("verdict").get<std::string>() == "pass";
    c.base_hash = j.at("base_hash").get<std::string>();
    if (j.contains("d")) c.d = j["d"].get<int>();
    if (j.contains("b")) c.background = ShiftAssignment(2, j["b"].get<std::vector<int>>());
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("certificate JSON: ") + e.what());
  }
}

inline Json to_json(const BaseVerdict& v) {
  Json j;
  j["d"] = v.d;
  j["lambda_nontrivial_max"] = v.lambda_nontrivial_max;
  j["bound"] = v.bound;
  j["epsilon"] = v.epsilon;
  j["verdict"] = v.pass ? "pass" : "fail";
  return j;
}

inline Json to_json(const SearchOutcome& o) {
  Json j;
  j["strategy"] = o.strategy;
  j["k"] = o.k;
  j["status"] = to_string(o.status);
  j["assignments_examined"] = o.assignments_examined;
  j["space_size"] = o.space_size ? Json(*o.space_size) : Json(nullptr);
  j["certificate"] = o.certificate ? to_json(*o.certificate) : Json(nullptr);
  return j;
}

inline Json to_json(const TwoStepOutcome& o) {
  Json j;
  j["strategy"] = "two-step";
  j["step1"] = to_json(o.step1);
  j["step2"] = o.step2 ? to_json(*o.step2) : Json(nullptr);
  j["failed_step"] = o.failed_step;
  j["certificate"] = o.certificate ? to_json(*o.certificate) : Json(nullptr);
  return j;
}

inline Json to_json(const BranchReport& r) {
  Json j;
  j["values"] = r.values;
  Json polys = Json::array();
  for (const auto& p : r.polynomials) polys.push_back(to_json(p));
  j["polynomials"] = std::move(polys);
  j["leading_positive"] = r.leading_positive;
  j["real_rooted"] = r.real_rooted;
  Json roots = Json::array();
  for (const auto& m : r.max_roots) roots.push_back(optional_number(m));
  j["max_roots"] = std::move(roots);
  j["common_interlacing"] = r.common_interlacing;
  j["samples"] = r.samples;
  j["all_affirmative"] = r.all_affirmative();
  return j;
}

inline Json to_json(const GreedyResult& g) {
  Json j;
  j["strategy"] = "greedy";
  j["k"] = lift_order(g.mode);
  j["b"] = g.background ? Json(g.background->shifts()) : Json(nullptr);
  j["family_shifts"] = g.family_shifts;
  Json trace = Json::array();
  for (const auto& step : g.trace) {
    Json s;
    s["edge"] = step.edge;
    s["values"] = step.values;
    Json roots = Json::array();
    for (const auto& m : step.branch_max_roots) roots.push_back(optional_number(m));
    s["branch_max_roots"] = std::move(roots);
    s["chosen"] = step.chosen;
    if (step.report) s["report"] = to_json(*step.report);
    trace.push_back(std::move(s));
  }
  j["trace"] = std::move(trace);
  j["final_polynomial"] = to_json(g.final_polynomial);
  j["final_max_root"] = optional_number(g.final_max_root);
  j["final_max_eigenvalue"] = g.final_max_eigenvalue;
  j["matching_max_root"] = g.matching_max_root;
  j["guarantee_holds"] = g.guarantee_holds;
  j["numeric_failure"] = g.numeric_failure;
  j["certificate"] = to_json(g.certificate);
  return j;
}

inline Json to_json(const OracleComparison& c) {
  Json j;
  j["expected"] = to_json(c.expected);
  j["matching"] = to_json(c.matching);
  j["max_residual"] = c.max_residual;
  j["relative_residual"] = c.relative_residual;
  return j;
}

// --- files -------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace shiftlift
