#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shiftlift/interlacing.hpp"
#include "shiftlift/matching.hpp"
#include "shiftlift/search.hpp"

namespace sl = shiftlift;
using sl::FamilyMode;
using sl::Polynomial;
using sl::PrefixNode;
using sl::ShiftAssignment;

namespace {

ShiftAssignment random_signing(std::mt19937_64& rng, int m) {
  std::vector<int> s(static_cast<std::size_t>(m));
  for (auto& x : s) x = static_cast<int>(rng() % 2);
  return ShiftAssignment(2, std::move(s));
}

}  // namespace

TEST(Oracle, PathOnThreeIsTreeCase) {
  // Every leaf of a tree has char poly x^3 - 2x.
  const auto g = sl::path_graph(3);
  const auto expected = Polynomial::from_real({0, -2, 0, 1});
  EXPECT_LE(sl::max_coefficient_residual(sl::expected_charpoly_oracle(g, FamilyMode::k3), expected),
            1e-12);
  for (const auto& s : sl::enumerate_assignments(g.m(), 3))
    EXPECT_LE(sl::max_coefficient_residual(sl::leaf_polynomial(g, FamilyMode::k3, s.shifts(), std::nullopt),
                                           expected),
              1e-12);
}

TEST(Oracle, K3EqualsMatchingOnCorpus) {
  for (const auto& [name, g] : oracle::small_corpus()) {
    const auto c = sl::compare_with_matching(g, FamilyMode::k3);
    EXPECT_LE(c.relative_residual, 1e-9) << name;
    EXPECT_TRUE(c.expected.is_real(1e-12)) << name;
  }
}

TEST(Oracle, K4EqualsMatchingForAnySigning) {
  std::mt19937_64 rng(41);
  for (const auto& [name, g] : oracle::small_corpus()) {
    for (int t = 0; t < 3; ++t) {
      const auto c = sl::compare_with_matching(g, FamilyMode::k4, random_signing(rng, g.m()));
      EXPECT_LE(c.relative_residual, 1e-9) << name;
    }
  }
}

TEST(Oracle, K4RequiresSigning) {
  EXPECT_THROW(sl::expected_charpoly_oracle(sl::cycle_graph(4), FamilyMode::k4), sl::InputError);
}

TEST(Oracle, ThreadCountDoesNotChangeBits) {
  sl::EnumerationLimits one, four;
  four.threads = 4;
  const auto g = sl::complete_bipartite(3);
  EXPECT_EQ(sl::expected_charpoly_oracle(g, FamilyMode::k3, std::nullopt, one),
            sl::expected_charpoly_oracle(g, FamilyMode::k3, std::nullopt, four));
}

TEST(Oracle, TermLimit) {
  sl::EnumerationLimits tiny;
  tiny.max_terms = 10;
  EXPECT_THROW(sl::expected_charpoly_oracle(sl::cycle_graph(4), FamilyMode::k3, std::nullopt, tiny),
               sl::InputError);
}

TEST(Prefix, ConditionalPolynomialsAreRealRootedOnC4) {
  const auto g = sl::cycle_graph(4);
  for (int j = 0; j <= g.m(); ++j) {
    for (const auto& prefix : sl::enumerate_assignments(j, 3)) {
      const PrefixNode node{FamilyMode::k3, prefix.shifts(), std::nullopt};
      const auto p = sl::conditional_expected_poly(g, node);
      EXPECT_TRUE(p.is_real(1e-12));
      EXPECT_TRUE(sl::is_real_rooted(p, sl::kFamilyRootTolerance));
    }
  }
}

TEST(Prefix, ChildrenAverageToParent) {
  const auto g = sl::complete_bipartite(2, 3);
  const PrefixNode node{FamilyMode::k3, {1, 0}, std::nullopt};
  Polynomial sum;
  for (int r : {0, 1, 2}) sum += sl::conditional_expected_poly(g, node.child(r));
  EXPECT_LE(sl::max_coefficient_residual(sum / 3.0, sl::conditional_expected_poly(g, node)), 1e-12);
}

TEST(Prefix, InvalidNodesAreInputErrors) {
  const auto g = sl::cycle_graph(4);
  EXPECT_THROW(sl::conditional_expected_poly(g, PrefixNode{FamilyMode::k3, {3}, std::nullopt}),
               sl::InputError);
  EXPECT_THROW(sl::conditional_expected_poly(g, PrefixNode{FamilyMode::k4, {1}, std::nullopt}),
               sl::InputError);
  EXPECT_THROW(sl::conditional_expected_poly(g, PrefixNode{FamilyMode::k3, {0, 0, 0, 0, 0}, std::nullopt}),
               sl::InputError);
  EXPECT_THROW(sl::conditional_expected_poly(
                   g, PrefixNode{FamilyMode::k3, {}, ShiftAssignment::zeros(2, 4)}),
               sl::InputError);
}

TEST(BranchReport, RootOfC4IsAffirmative) {
  const auto r = sl::branch_interlacing_report(sl::cycle_graph(4), PrefixNode{});
  EXPECT_EQ(r.values, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(r.polynomials.size(), 3u);
  EXPECT_TRUE(r.all_affirmative());
}

TEST(BranchReport, FullPrefixHasOnePolynomial) {
  const auto g = sl::cycle_graph(4);
  const auto r = sl::branch_interlacing_report(g, PrefixNode{FamilyMode::k3, {0, 1, 2, 0}, std::nullopt});
  EXPECT_TRUE(r.values.empty());
  ASSERT_EQ(r.polynomials.size(), 1u);
  EXPECT_TRUE(r.all_affirmative());
}

TEST(BranchReport, K4FamilyOnK33) {
  std::mt19937_64 rng(5);
  const auto g = sl::complete_bipartite(3);
  const PrefixNode node{FamilyMode::k4, {2, 0}, random_signing(rng, g.m())};
  const auto r = sl::branch_interlacing_report(g, node);
  EXPECT_EQ(r.values, (std::vector<int>{0, 2}));
  EXPECT_TRUE(r.all_affirmative());
}

TEST(Greedy, C4ThreeLift) {
  sl::GreedyOptions opt;
  opt.with_reports = true;
  const auto g = sl::cycle_graph(4);
  const auto r = sl::greedy_interlacing_search(g, FamilyMode::k3, std::nullopt, opt);
  EXPECT_FALSE(r.numeric_failure);
  EXPECT_TRUE(r.guarantee_holds);
  EXPECT_LE(r.final_max_eigenvalue, r.matching_max_root + 1e-7);
  EXPECT_EQ(r.trace.size(), 4u);
  for (const auto& step : r.trace) {
    ASSERT_TRUE(step.report);
    EXPECT_TRUE(step.report->all_affirmative());
  }
  EXPECT_EQ(r.assignment.k(), 3);
}

TEST(Greedy, K33ThreeLiftCertifies) {
  const auto g = sl::complete_bipartite(3);
  const auto r = sl::greedy_interlacing_search(g, FamilyMode::k3, std::nullopt);
  EXPECT_TRUE(r.guarantee_holds);
  EXPECT_TRUE(r.certificate.pass);
  EXPECT_LE(r.certificate.lambda_new_max, 2.0 * std::sqrt(2.0) + 1e-8);
}

TEST(Greedy, K33FourLiftWithSigning) {
  const auto g = sl::complete_bipartite(3);
  sl::SearchBudget budget;
  const auto b = sl::exhaustive_search(g, 2, sl::kDefaultEpsilon, budget).certificate->assignment;
  sl::GreedyOptions opt;
  opt.with_reports = true;
  const auto r = sl::greedy_interlacing_search(g, FamilyMode::k4, b, opt);
  EXPECT_TRUE(r.guarantee_holds);
  EXPECT_TRUE(r.certificate.pass);
  ASSERT_TRUE(r.certificate.background);
  EXPECT_EQ(*r.certificate.background, b);
  for (int j = 0; j < g.m(); ++j) EXPECT_EQ(r.assignment[j] % 2, b[j]);
  for (const auto& step : r.trace) EXPECT_TRUE(step.report->all_affirmative());
}
