#include <gtest/gtest.h>

#include <cmath>

#include "shiftlift/lift.hpp"
#include "shiftlift/search.hpp"

namespace sl = shiftlift;
using sl::SearchBudget;
using sl::SearchStatus;

namespace {

SearchBudget budget(std::uint64_t n, unsigned threads = 1, std::uint64_t seed = 1) {
  SearchBudget b;
  b.max_assignments = n;
  b.threads = threads;
  b.seed = seed;
  return b;
}

}  // namespace

TEST(Exhaustive, SingleEdgeHasNoRamanujanTwoLift) {
  const auto o = sl::exhaustive_search(sl::complete_bipartite(1), 2, sl::kDefaultEpsilon, budget(100));
  EXPECT_EQ(o.status, SearchStatus::none_pass);
  EXPECT_EQ(o.assignments_examined, 2u);
  EXPECT_FALSE(o.certificate);
}

TEST(Exhaustive, ZeroBudgetIsExhausted) {
  const auto o = sl::exhaustive_search(sl::complete_bipartite(3), 3, sl::kDefaultEpsilon, budget(0));
  EXPECT_EQ(o.status, SearchStatus::budget_exhausted);
  EXPECT_EQ(o.assignments_examined, 0u);
}

TEST(Exhaustive, ZeroTimeLimitIsExhausted) {
  SearchBudget b = budget(1000);
  b.max_wall_seconds = 0.0;
  const auto o = sl::exhaustive_search(sl::complete_bipartite(3), 3, sl::kDefaultEpsilon, b);
  EXPECT_EQ(o.status, SearchStatus::budget_exhausted);
}

TEST(Exhaustive, RejectsUnboundedBudget) {
  SearchBudget b;
  b.max_assignments.reset();
  EXPECT_THROW(sl::exhaustive_search(sl::complete_bipartite(3), 3, 1e-8, b), sl::InputError);
}

TEST(Exhaustive, K33ThreeLiftIsFirstPassingIndex) {
  const auto g = sl::complete_bipartite(3);
  const auto o = sl::exhaustive_search(g, 3, sl::kDefaultEpsilon, budget(100000));
  ASSERT_EQ(o.status, SearchStatus::found);
  ASSERT_TRUE(o.certificate);
  EXPECT_TRUE(o.certificate->pass);
  // No earlier index passes.
  const auto range = sl::enumerate_assignments(g.m(), 3);
  for (std::uint64_t i = 0; i + 1 < o.assignments_examined; ++i)
    EXPECT_FALSE(sl::certify_lift(g, range.at(i)).pass);
  EXPECT_EQ(range.at(o.assignments_examined - 1), o.certificate->assignment);
}

TEST(Exhaustive, ThreadCountDoesNotChangeResult) {
  const auto g = sl::complete_bipartite(3);
  const auto a = sl::exhaustive_search(g, 4, sl::kDefaultEpsilon, budget(300000, 1));
  const auto b = sl::exhaustive_search(g, 4, sl::kDefaultEpsilon, budget(300000, 4));
  ASSERT_TRUE(a.certificate && b.certificate);
  EXPECT_EQ(a.certificate->assignment, b.certificate->assignment);
  EXPECT_EQ(a.certificate->lambda_new_max, b.certificate->lambda_new_max);
  EXPECT_EQ(a.assignments_examined, b.assignments_examined);
}

TEST(Random, DeterministicPerSeedAndThreads) {
  const auto g = sl::complete_bipartite(3);
  const auto a = sl::random_search(g, 3, sl::kDefaultEpsilon, budget(10000, 1, 7));
  const auto b = sl::random_search(g, 3, sl::kDefaultEpsilon, budget(10000, 1, 7));
  const auto c = sl::random_search(g, 3, sl::kDefaultEpsilon, budget(10000, 3, 7));
  ASSERT_EQ(a.status, SearchStatus::found);
  EXPECT_EQ(a.certificate->assignment, b.certificate->assignment);
  EXPECT_EQ(a.certificate->assignment, c.certificate->assignment);
  EXPECT_EQ(a.assignments_examined, c.assignments_examined);
}

TEST(Random, K33SeedOneFindsPassingThreeLift) {
  const auto o = sl::random_search(sl::complete_bipartite(3), 3, sl::kDefaultEpsilon, budget(10000));
  ASSERT_EQ(o.status, SearchStatus::found);
  EXPECT_TRUE(o.certificate->pass);
  EXPECT_LE(o.certificate->lambda_new_max, 2.0 * std::sqrt(2.0) + 1e-8);
}

TEST(Random, FailureIsBudgetExhaustion) {
  const auto o = sl::random_search(sl::complete_bipartite(1), 2, sl::kDefaultEpsilon, budget(50));
  EXPECT_EQ(o.status, SearchStatus::budget_exhausted);
  EXPECT_EQ(o.assignments_examined, 50u);
}

TEST(Masked, BackgroundIsAdded) {
  const auto g = sl::complete_bipartite(3);
  const auto b = sl::ShiftAssignment(2, std::vector<int>(9, 1));
  const sl::SearchSpace space{4, sl::uniform_mask(g.m(), {0, 2}), b};
  const auto o = sl::exhaustive_search(g, space, sl::kDefaultEpsilon, budget(1000));
  if (o.certificate) {
    for (int j = 0; j < g.m(); ++j) EXPECT_EQ(o.certificate->assignment[j] % 2, 1);
    ASSERT_TRUE(o.certificate->background);
    EXPECT_EQ(*o.certificate->background, b);
  }
  EXPECT_EQ(*o.space_size, 512u);
}

TEST(TwoStep, K33) {
  const auto g = sl::complete_bipartite(3);
  const auto o = sl::two_step_4lift(g, sl::kDefaultEpsilon, budget(100000));
  ASSERT_TRUE(o.found());
  const auto& b = *o.certificate->background;
  EXPECT_EQ(b.k(), 2);
  EXPECT_TRUE(sl::certify_lift(g, b).pass);
  const auto& s = o.certificate->assignment;
  EXPECT_EQ(s.k(), 4);
  for (int j = 0; j < g.m(); ++j) EXPECT_EQ(s[j] % 2, b[j]);
  // Quotient at i = 2 is the signing of b, exactly.
  EXPECT_EQ(sl::quotient_matrix(g, s, 2).entries, sl::quotient_matrix(g, b, 1).entries);
  EXPECT_TRUE(sl::certify_lift(g, s).pass);
}

TEST(TwoStep, StepOneFailureIsReported) {
  const auto o = sl::two_step_4lift(sl::complete_bipartite(1), sl::kDefaultEpsilon, budget(100));
  EXPECT_FALSE(o.found());
  EXPECT_EQ(o.failed_step, 1);
  EXPECT_FALSE(o.step2);
}
