#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shiftlift/digest.hpp"
#include "shiftlift/graph.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/parallel.hpp"
#include "shiftlift/spectral.hpp"

namespace shiftlift {

/// Limits for a search. At least one of the two limits must be finite.
struct SearchBudget {
  std::optional<std::uint64_t> max_assignments = 10'000'000;
  std::optional<double> max_wall_seconds;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // never changes any result

  void check() const {
    if (!max_assignments && !max_wall_seconds)
      throw InputError("search budget: need a finite assignment or time limit");
    if (max_wall_seconds && *max_wall_seconds < 0.0)
      throw InputError("search budget: negative time limit");
  }
};

enum class SearchStatus { found, none_pass, budget_exhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_pass: return "none_pass";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct SearchOutcome {
  std::string strategy;
  int k = 2;
  SearchStatus status = SearchStatus::none_pass;
  std::optional<Certificate> certificate;
  /// Lexicographic position (exhaustive) or sample count (random) up to and
  /// including the winner; the scanned extent when nothing was found.
  std::uint64_t assignments_examined = 0;
  std::optional<std::uint64_t> space_size;

  bool found() const { return status == SearchStatus::found; }
};

/// Which shift values a search may use, and a fixed offset added to every
/// candidate (mod k). The default is the unrestricted k-lift search.
struct SearchSpace {
  int k = 2;
  std::optional<ShiftMask> mask;
  std::optional<ShiftAssignment> background;

  ShiftAssignment combine(const ShiftAssignment& s) const {
    return background ? add_shifts(*background, s, k) : s;
  }
};

namespace detail {

inline constexpr std::uint64_t kChunk = 512;

class Deadline {
 public:
  explicit Deadline(std::optional<double> seconds)
      : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}
  bool expired() const {
    if (!seconds_) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    return dt.count() >= *seconds_;
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::optional<double> seconds_;
};

inline void atomic_min(std::atomic<std::uint64_t>& a, std::uint64_t v) {
  auto cur = a.load();
  while (v < cur && !a.compare_exchange_weak(cur, v)) {
  }
}

inline constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

struct ScanResult {
  std::uint64_t best = kNone;   // smallest passing index, or kNone
  bool timed_out = false;
  std::uint64_t scanned = 0;    // length of the fully scanned prefix
};

// Drives a scan over indices [0, limit) in chunks claimed in increasing
// order and finds the smallest index for which `passes` holds. A chunk is
// only claimed before the deadline, so every claimed chunk is finished and
// the minimum over claimed chunks is the minimum over that prefix.
template <class Passes>
ScanResult scan_indices(std::uint64_t limit, const SearchBudget& budget, Passes&& passes) {
  const Deadline deadline(budget.max_wall_seconds);
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> claimed_end{0};
  std::atomic<bool> timed_out{false};
  const std::uint64_t chunks = limit / kChunk + (limit % kChunk != 0 ? 1 : 0);
  for_each_chunk(chunks, budget.threads, [&](std::uint64_t c) {
    if (deadline.expired()) {
      timed_out = true;
      return false;
    }
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(limit, lo + kChunk);
    if (lo > best.load()) return false;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (passes(idx)) {
        atomic_min(best, idx);
        break;
      }
    }
    auto cur = claimed_end.load();
    while (hi > cur && !claimed_end.compare_exchange_weak(cur, hi)) {
    }
    return true;
  });
  return {best.load(), timed_out.load(), claimed_end.load()};
}

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 as a UniformRandomBitGenerator; one per sample index, so the
/// draw for sample i does not depend on which worker produced it.
class SampleStream {
 public:
  using result_type = std::uint64_t;
  SampleStream(std::uint64_t seed, std::uint64_t sample)
      : state_(mix64(seed ^ mix64(sample + 0x632be59bd9b4e019ULL))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

inline ShiftAssignment draw_assignment(const AssignmentRange& space, std::uint64_t seed,
                                       std::uint64_t sample) {
  SampleStream rng(seed, sample);
  std::vector<int> s(static_cast<std::size_t>(space.m()));
  for (int j = 0; j < space.m(); ++j) {
    const auto& allowed = space.allowed()[j];
    std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
    s[j] = allowed[pick(rng)];
  }
  return ShiftAssignment(space.k(), std::move(s));
}

}  // namespace detail

/// Lexicographically smallest assignment in the space whose lift meets the
/// Ramanujan bound, scanning at most budget.max_assignments candidates.
inline SearchOutcome exhaustive_search(const Graph& g, const SearchSpace& space,
                                       double epsilon, const SearchBudget& budget) {
  budget.check();
  const int d = require_regular_bipartite(g, "exhaustive_search");
  const AssignmentRange range(g.m(), space.k, space.mask);
  if (space.background) require_matching(g, *space.background, "exhaustive_search");

  SearchOutcome out;
  out.strategy = "exhaustive";
  out.k = space.k;
  out.space_size = range.total();
  const std::uint64_t total = range.total().value_or(detail::kNone);
  const std::uint64_t limit = std::min(total, budget.max_assignments.value_or(detail::kNone));
  const double threshold = ramanujan_bound(d) + epsilon;

  const auto scan = detail::scan_indices(limit, budget, [&](std::uint64_t idx) {
    return lambda_new_max(g, space.combine(range.at(idx))) <= threshold;
  });

  if (scan.best != detail::kNone) {
    const auto s = space.combine(range.at(scan.best));
    out.status = SearchStatus::found;
    out.certificate = make_certificate(g, d, s, lambda_new_max(g, s), epsilon);
    if (space.background) out.certificate->background = space.background;
    out.assignments_examined = scan.best + 1;
  } else {
    const bool complete = !scan.timed_out && limit == total && range.total().has_value();
    out.status = complete ? SearchStatus::none_pass : SearchStatus::budget_exhausted;
    out.assignments_examined = scan.scanned;
  }
  return out;
}

inline SearchOutcome exhaustive_search(const Graph& g, int k, double epsilon,
                                       const SearchBudget& budget) {
  return exhaustive_search(g, SearchSpace{k, std::nullopt, std::nullopt}, epsilon, budget);
}

/// Uniform sampling with the seeded per-sample streams; the winner is the
/// lowest passing sample index. Requires a finite assignment budget or a
/// time limit.
inline SearchOutcome random_search(const Graph& g, const SearchSpace& space, double epsilon,
                                   const SearchBudget& budget) {
  budget.check();
  const int d = require_regular_bipartite(g, "random_search");
  const AssignmentRange range(g.m(), space.k, space.mask);
  if (space.background) require_matching(g, *space.background, "random_search");

  SearchOutcome out;
  out.strategy = "random";
  out.k = space.k;
  out.space_size = range.total();
  const std::uint64_t limit = budget.max_assignments.value_or(detail::kNone);
  const double threshold = ramanujan_bound(d) + epsilon;

  const auto scan = detail::scan_indices(limit, budget, [&](std::uint64_t idx) {
    const auto s = space.combine(detail::draw_assignment(range, budget.seed, idx));
    return lambda_new_max(g, s) <= threshold;
  });

  if (scan.best != detail::kNone) {
    const auto s = space.combine(detail::draw_assignment(range, budget.seed, scan.best));
    out.status = SearchStatus::found;
    out.certificate = make_certificate(g, d, s, lambda_new_max(g, s), epsilon);
    if (space.background) out.certificate->background = space.background;
    out.assignments_examined = scan.best + 1;
  } else {
    out.status = SearchStatus::budget_exhausted;
    out.assignments_examined = scan.scanned;
  }
  return out;
}

inline SearchOutcome random_search(const Graph& g, int k, double epsilon,
                                   const SearchBudget& budget) {
  return random_search(g, SearchSpace{k, std::nullopt, std::nullopt}, epsilon, budget);
}

/// Edge-count thresholds above which the randomized strategy is the default.
struct StrategyThresholds {
  int exhaustive_max_edges_k2 = 20;
  int exhaustive_max_edges_k3 = 14;
  int exhaustive_max_edges_k4 = 11;

  bool prefers_exhaustive(int k, int m) const {
    switch (k) {
      case 2: return m <= exhaustive_max_edges_k2;
      case 3: return m <= exhaustive_max_edges_k3;
      case 4: return m <= exhaustive_max_edges_k4;
      default: return false;
    }
  }
};

inline SearchOutcome auto_search(const Graph& g, const SearchSpace& space, double epsilon,
                                 const SearchBudget& budget,
                                 const StrategyThresholds& thresholds = {}) {
  // Masked spaces are smaller than k^m; judge by the effective size.
  int effective_k = space.k;
  if (space.mask && !space.mask->empty()) effective_k = static_cast<int>(space.mask->front().size());
  if (thresholds.prefers_exhaustive(effective_k, g.m()))
    return exhaustive_search(g, space, epsilon, budget);
  return random_search(g, space, epsilon, budget);
}

struct TwoStepOutcome {
  SearchOutcome step1;                 // b : E -> {0,1}
  std::optional<SearchOutcome> step2;  // s : E -> {0,2}, candidates b + s
  std::optional<Certificate> certificate;
  int failed_step = 0;                 // 0 on success

  bool found() const { return certificate.has_value() && certificate->pass; }
};

/// Shift 4-lift in two steps: a good 2-lift signing b, then s over {0,2}
/// with s' = b + s, so that quotient 2 of s' is exactly the signing of b.
inline TwoStepOutcome two_step_4lift(const Graph& g, double epsilon, const SearchBudget& budget,
                                     const StrategyThresholds& thresholds = {}) {
  TwoStepOutcome out;
  out.step1 = auto_search(g, SearchSpace{2, std::nullopt, std::nullopt}, epsilon, budget,
                          thresholds);
  if (!out.step1.found()) {
    out.failed_step = 1;
    return out;
  }
  const ShiftAssignment b = out.step1.certificate->assignment;  // k = 2
  SearchSpace space{4, uniform_mask(g.m(), {0, 2}), b};
  out.step2 = auto_search(g, space, epsilon, budget, thresholds);
  out.step2->strategy = "two-step/" + out.step2->strategy;
  if (!out.step2->found()) {
    out.failed_step = 2;
    return out;
  }
  out.certificate = out.step2->certificate;
  out.certificate->background = b;
  return out;
}

}  // namespace shiftlift
