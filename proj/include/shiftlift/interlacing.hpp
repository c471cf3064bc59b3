#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlift/graph.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/matching.hpp"
#include "shiftlift/parallel.hpp"
#include "shiftlift/polynomial.hpp"
#include "shiftlift/spectral.hpp"

namespace shiftlift {

/// The two polynomial families: k = 3 with shifts in {0,1,2} evaluated at
/// omega = exp(2 pi i / 3), and k = 4 with shifts b + s, s in {0,2},
/// evaluated at i.
enum class FamilyMode { k3, k4 };

inline int lift_order(FamilyMode mode) { return mode == FamilyMode::k3 ? 3 : 4; }

inline std::vector<int> allowed_values(FamilyMode mode) {
  return mode == FamilyMode::k3 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 2};
}

/// A node of the family tree: the first j shifts fixed.
struct PrefixNode {
  FamilyMode mode = FamilyMode::k3;
  std::vector<int> fixed_shifts;
  /// 2-lift signing b (k4 only); zero when absent.
  std::optional<ShiftAssignment> background;

  int depth() const { return static_cast<int>(fixed_shifts.size()); }
  PrefixNode child(int value) const {
    PrefixNode c = *this;
    c.fixed_shifts.push_back(value);
    return c;
  }
};

struct EnumerationLimits {
  std::uint64_t max_terms = std::uint64_t{1} << 22;
  unsigned threads = 1;
};

namespace detail {

inline void check_node(const Graph& g, const PrefixNode& node) {
  if (node.depth() > g.m()) throw InputError("prefix longer than the edge list");
  const auto H = allowed_values(node.mode);
  for (int v : node.fixed_shifts)
    if (std::find(H.begin(), H.end(), v) == H.end())
      throw InputError("prefix value " + std::to_string(v) + " outside the allowed set");
  if (node.background) {
    if (node.mode != FamilyMode::k4)
      throw InputError("a background signing only applies to the k4 family");
    require_matching(g, *node.background, "prefix node");
    for (int v : node.background->shifts())
      if (v != 0 && v != 1) throw InputError("background signing must take values in {0,1}");
  }
}

// t^e for the family's evaluation point.
inline std::vector<Complex> family_powers(FamilyMode mode) {
  const int k = lift_order(mode);
  std::vector<Complex> p(static_cast<std::size_t>(k));
  for (int e = 0; e < k; ++e) p[e] = unit_root(k, e);
  return p;
}

}  // namespace detail

/// Full shift assignment of a leaf: s for k3, b + s (mod 4) for k4.
inline ShiftAssignment leaf_assignment(FamilyMode mode, const std::vector<int>& shifts,
                                       const std::optional<ShiftAssignment>& background) {
  const int k = lift_order(mode);
  ShiftAssignment s(k, shifts);
  if (background) return add_shifts(*background, s, k);
  return s;
}

/// det(xI - A_{s'}(t)) for one leaf.
inline Polynomial leaf_polynomial(const Graph& g, FamilyMode mode,
                                  const std::vector<int>& shifts,
                                  const std::optional<ShiftAssignment>& background) {
  const auto s = leaf_assignment(mode, shifts, background);
  return char_poly(shift_matrix(g, s, detail::family_powers(mode)));
}

/// Average of the leaf polynomials over every completion of the prefix.
/// Partial sums are taken over fixed index chunks and combined in chunk
/// order, so the result does not depend on the thread count.
inline Polynomial conditional_expected_poly(const Graph& g, const PrefixNode& node,
                                            const EnumerationLimits& limits = {}) {
  detail::check_node(g, node);
  const int j = node.depth();
  const int free_edges = g.m() - j;
  const auto H = allowed_values(node.mode);
  const AssignmentRange completions(free_edges, lift_order(node.mode),
                                    uniform_mask(free_edges, H));
  const auto total = completions.total();
  if (!total || *total > limits.max_terms)
    throw InputError("conditional_expected_poly: " + std::to_string(H.size()) + "^" +
                     std::to_string(free_edges) + " completions exceed the term limit");

  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (*total + kChunk - 1) / kChunk;
  std::vector<Polynomial> partial(chunks);
  const auto powers = detail::family_powers(node.mode);
  const int k = lift_order(node.mode);

  for_each_chunk(chunks, limits.threads, [&](std::uint64_t c) {
    const auto sub = completions.subrange(c * kChunk, (c + 1) * kChunk);
    std::vector<int> shifts = node.fixed_shifts;
    shifts.resize(static_cast<std::size_t>(g.m()));
    Polynomial sum;
    for (const auto& tail : sub) {
      std::copy(tail.shifts().begin(), tail.shifts().end(), shifts.begin() + j);
      ShiftAssignment s(k, shifts);
      if (node.background) s = add_shifts(*node.background, s, k);
      sum += char_poly(shift_matrix(g, s, powers));
    }
    partial[c] = std::move(sum);
    return true;
  });

  Polynomial avg;
  for (const auto& p : partial) avg += p;
  return avg / static_cast<double>(*total);
}

/// E_s det(xI - A_s(t)) over the whole family: the root of the tree.
inline Polynomial expected_charpoly_oracle(const Graph& g, FamilyMode mode,
                                           const std::optional<ShiftAssignment>& b = std::nullopt,
                                           const EnumerationLimits& limits = {}) {
  if (mode == FamilyMode::k4 && !b)
    throw InputError("expected_charpoly_oracle: k4 mode requires a signing b");
  return conditional_expected_poly(g, PrefixNode{mode, {}, b}, limits);
}

/// Coefficient residual of the oracle against the matching polynomial.
struct OracleComparison {
  Polynomial expected;
  Polynomial matching;
  double max_residual = 0.0;
  double relative_residual = 0.0;  // max_residual / max|matching coefficient|
};

inline OracleComparison compare_with_matching(const Graph& g, FamilyMode mode,
                                              const std::optional<ShiftAssignment>& b = std::nullopt,
                                              const EnumerationLimits& limits = {}) {
  OracleComparison c;
  c.expected = expected_charpoly_oracle(g, mode, b, limits);
  c.matching = matching_polynomial(g);
  c.max_residual = max_coefficient_residual(c.expected, c.matching);
  c.relative_residual = c.max_residual / std::max(1.0, c.matching.max_abs_coefficient());
  return c;
}

inline constexpr double kFamilyRootTolerance = 1e-7;
inline constexpr int kDefaultInterlacingSamples = 21;

/// Hypothesis check at one node: the |H| child polynomials have positive
/// leading coefficients, are real-rooted, and pass the sampled
/// common-interlacing test.
struct BranchReport {
  std::vector<int> values;  // branch shift values; empty at a full prefix
  std::vector<Polynomial> polynomials;
  std::vector<bool> leading_positive;
  std::vector<bool> real_rooted;
  std::vector<std::optional<double>> max_roots;
  bool common_interlacing = true;
  int samples = kDefaultInterlacingSamples;

  bool all_affirmative() const {
    auto all = [](const std::vector<bool>& v) {
      return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
    };
    return all(leading_positive) && all(real_rooted) && common_interlacing;
  }
};

inline BranchReport report_from_branches(std::vector<int> values, std::vector<Polynomial> polys,
                                         int samples, double tol) {
  BranchReport r;
  r.values = std::move(values);
  r.samples = samples;
  for (const auto& p : polys) {
    r.leading_positive.push_back(p.leading().real() > 0.0 && p.is_real());
    const auto rs = root_set(p, tol);
    r.real_rooted.push_back(p.is_real() && rs.all_real());
    r.max_roots.push_back(rs.max_real_root);
  }
  const bool can_mix =
      std::all_of(r.leading_positive.begin(), r.leading_positive.end(), [](bool b) { return b; });
  r.common_interlacing = can_mix && check_common_interlacing(polys, samples, tol);
  r.polynomials = std::move(polys);
  return r;
}

inline BranchReport branch_interlacing_report(const Graph& g, const PrefixNode& node,
                                              int samples = kDefaultInterlacingSamples,
                                              double tol = kFamilyRootTolerance,
                                              const EnumerationLimits& limits = {}) {
  detail::check_node(g, node);
  if (node.depth() == g.m()) {
    return report_from_branches({}, {conditional_expected_poly(g, node, limits)}, samples, tol);
  }
  std::vector<int> values = allowed_values(node.mode);
  std::vector<Polynomial> polys;
  for (int r : values) polys.push_back(conditional_expected_poly(g, node.child(r), limits));
  return report_from_branches(std::move(values), std::move(polys), samples, tol);
}

struct GreedyStep {
  int edge = 0;
  std::vector<int> values;
  std::vector<std::optional<double>> branch_max_roots;
  int chosen = 0;
  std::optional<BranchReport> report;
};

struct GreedyResult {
  FamilyMode mode = FamilyMode::k3;
  std::optional<ShiftAssignment> background;
  std::vector<int> family_shifts;  // s, values in H
  ShiftAssignment assignment;      // s for k3, b + s for k4
  std::vector<GreedyStep> trace;
  Polynomial final_polynomial;
  std::optional<double> final_max_root;  // from the final polynomial
  double final_max_eigenvalue = 0.0;     // same quantity, by eigensolve
  double matching_max_root = 0.0;
  bool guarantee_holds = false;
  bool numeric_failure = false;  // a branch with no certified real root
  Certificate certificate;
};

struct GreedyOptions {
  double epsilon = kDefaultEpsilon;
  double guarantee_tolerance = 1e-7;
  double root_tolerance = kFamilyRootTolerance;
  /// Ties within this relative gap go to the smaller shift value.
  double tie_tolerance = 1e-10;
  bool with_reports = false;
  int samples = kDefaultInterlacingSamples;
  EnumerationLimits limits;
};

/// Walks the family tree edge by edge, keeping the child whose conditional
/// expected polynomial has the smallest largest root.
inline GreedyResult greedy_interlacing_search(const Graph& g, FamilyMode mode,
                                              std::optional<ShiftAssignment> background,
                                              const GreedyOptions& opt = {}) {
  if (mode == FamilyMode::k4 && !background)
    background = ShiftAssignment::zeros(2, g.m());
  PrefixNode node{mode, {}, background};
  detail::check_node(g, node);
  require_regular_bipartite(g, "greedy_interlacing_search");

  GreedyResult res;
  res.mode = mode;
  res.background = background;
  const auto mu = matching_polynomial(g);
  const auto mu_root = max_real_root(mu, opt.root_tolerance);
  if (!mu_root) throw std::runtime_error("greedy_interlacing_search: matching polynomial has no real root");
  res.matching_max_root = *mu_root;

  const auto H = allowed_values(mode);
  for (int j = 0; j < g.m(); ++j) {
    GreedyStep step;
    step.edge = j;
    step.values = H;
    std::vector<Polynomial> polys;
    for (int r : H) {
      polys.push_back(conditional_expected_poly(g, node.child(r), opt.limits));
      const auto root = max_real_root(polys.back(), opt.root_tolerance);
      if (!root) res.numeric_failure = true;
      step.branch_max_roots.push_back(root);
    }
    std::size_t pick = 0;
    for (std::size_t r = 1; r < H.size(); ++r) {
      const auto& cand = step.branch_max_roots[r];
      const auto& best = step.branch_max_roots[pick];
      if (!cand) continue;
      if (!best) {
        pick = r;
        continue;
      }
      const double gap = opt.tie_tolerance * (1.0 + std::abs(*best));
      if (*cand < *best - gap) pick = r;
    }
    step.chosen = H[pick];
    if (opt.with_reports)
      step.report = report_from_branches(H, polys, opt.samples, opt.root_tolerance);
    node = node.child(step.chosen);
    res.trace.push_back(std::move(step));
  }

  res.family_shifts = node.fixed_shifts;
  res.assignment = leaf_assignment(mode, node.fixed_shifts, background);
  res.final_polynomial = leaf_polynomial(g, mode, node.fixed_shifts, background);
  res.final_max_root = max_real_root(res.final_polynomial, opt.root_tolerance);
  if (!res.final_max_root) res.numeric_failure = true;
  const auto quotient = hermitian_eigenvalues(
      shift_matrix(g, res.assignment, detail::family_powers(mode)), "quotient 1");
  res.final_max_eigenvalue = quotient.eigenvalues.back();
  res.guarantee_holds =
      res.final_max_eigenvalue <= res.matching_max_root + opt.guarantee_tolerance;
  if (!res.guarantee_holds) res.numeric_failure = true;
  res.certificate = certify_lift(g, res.assignment, opt.epsilon);
  if (mode == FamilyMode::k4) res.certificate.background = background;
  return res;
}

}  // namespace shiftlift
