#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftlift/graph.hpp"
#include "shiftlift/polynomial.hpp"

namespace shiftlift {

struct MatchingLimits {
  int max_edges = 64;
};

/// counts[k] = number of matchings with exactly k edges; exact.
struct MatchingNumbers {
  int n = 0;
  std::vector<std::int64_t> counts;
};

namespace detail {

using Mask = unsigned __int128;

struct MaskHash {
  std::size_t operator()(Mask m) const noexcept {
    const auto lo = static_cast<std::uint64_t>(m);
    const auto hi = static_cast<std::uint64_t>(m >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw InputError("matching_polynomial: coefficient overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw InputError("matching_polynomial: coefficient overflow");
  return r;
}

// Matching counts of the subgraph induced by a vertex set, memoized per set.
// Removing the lowest vertex v splits the matchings into those missing v and,
// for each neighbour w, those using {v,w}: the edge-deletion recursion
// applied to all edges at v at once.
class MatchingCounter {
 public:
  explicit MatchingCounter(std::vector<Mask> nbr) : nbr_(std::move(nbr)) {}

  const std::vector<std::int64_t>& count(Mask set) {
    if (auto it = memo_.find(set); it != memo_.end()) return it->second;
    std::vector<std::int64_t> out{1};
    if (set != 0) {
      const int v = lowest(set);
      const Mask rest = set & ~(Mask{1} << v);
      out = count(rest);
      Mask cand = nbr_[v] & rest;
      while (cand != 0) {
        const int w = lowest(cand);
        cand &= ~(Mask{1} << w);
        const auto sub = count(rest & ~(Mask{1} << w));
        if (out.size() < sub.size() + 1) out.resize(sub.size() + 1, 0);
        for (std::size_t k = 0; k < sub.size(); ++k)
          out[k + 1] = checked_add(out[k + 1], sub[k]);
      }
    }
    return memo_.emplace(set, std::move(out)).first->second;
  }

 private:
  static int lowest(Mask m) {
    const auto lo = static_cast<std::uint64_t>(m);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(m >> 64));
  }

  std::vector<Mask> nbr_;
  std::unordered_map<Mask, std::vector<std::int64_t>, MaskHash> memo_;
};

}  // namespace detail

/// Exact matching numbers m_0, m_1, ... of g. Components are counted
/// independently and combined by convolution.
inline MatchingNumbers matching_numbers(const Graph& g, MatchingLimits limits = {}) {
  if (g.m() > limits.max_edges)
    throw InputError("matching_polynomial: graph has " + std::to_string(g.m()) +
                     " edges, limit is " + std::to_string(limits.max_edges));
  MatchingNumbers result{g.n(), {1}};
  std::vector<int> comp(static_cast<std::size_t>(g.n()) + 1, -1);
  for (Vertex start = 1; start <= g.n(); ++start) {
    if (comp[start] != -1 || g.degree(start) == 0) continue;
    std::vector<Vertex> members{start};
    comp[start] = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Vertex w : g.neighbors(members[i]))
        if (comp[w] == -1) {
          comp[w] = static_cast<int>(members.size());
          members.push_back(w);
        }
    if (members.size() > 128)
      throw InputError("matching_polynomial: component exceeds 128 vertices");

    std::vector<detail::Mask> nbr(members.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Vertex w : g.neighbors(members[i]))
        nbr[i] |= detail::Mask{1} << comp[w];
    const detail::Mask all =
        members.size() == 128 ? ~detail::Mask{0}
                              : (detail::Mask{1} << members.size()) - 1;
    detail::MatchingCounter counter(std::move(nbr));
    const auto part = counter.count(all);

    std::vector<std::int64_t> merged(result.counts.size() + part.size() - 1, 0);
    for (std::size_t a = 0; a < result.counts.size(); ++a)
      for (std::size_t b = 0; b < part.size(); ++b)
        merged[a + b] = detail::checked_add(
            merged[a + b], detail::checked_mul(result.counts[a], part[b]));
    result.counts = std::move(merged);
  }
  while (result.counts.size() > 1 && result.counts.back() == 0) result.counts.pop_back();
  return result;
}

/// sum_k (-1)^k m_k x^(n-2k).
inline Polynomial to_polynomial(const MatchingNumbers& mn) {
  std::vector<Complex> c(static_cast<std::size_t>(mn.n) + 1, 0.0);
  for (std::size_t k = 0; k < mn.counts.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(mn.n) - 2 * k] = sign * static_cast<double>(mn.counts[k]);
  }
  return Polynomial(std::move(c));
}

inline Polynomial matching_polynomial(const Graph& g, MatchingLimits limits = {}) {
  return to_polynomial(matching_numbers(g, limits));
}

}  // namespace shiftlift
