#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "shiftlift/graph.hpp"
#include "shiftlift/polynomial.hpp"

namespace shiftlift {

/// Shift function of a shift k-lift: one value in [0,k) per edge e_j = (u,v),
/// u < v, in the graph's canonical edge order. The reverse orientation has
/// value (k - s) mod k and is never stored.
class ShiftAssignment {
 public:
  ShiftAssignment() = default;
  ShiftAssignment(int k, std::vector<int> shifts) : k_(k), shifts_(std::move(shifts)) {
    if (k_ < 2) throw InputError("shift assignment: k must be >= 2");
    for (int s : shifts_)
      if (s < 0 || s >= k_)
        throw InputError("shift assignment: value " + std::to_string(s) +
                         " outside [0," + std::to_string(k_) + ")");
  }

  static ShiftAssignment zeros(int k, int m) {
    return ShiftAssignment(k, std::vector<int>(static_cast<std::size_t>(m), 0));
  }

  int k() const { return k_; }
  int m() const { return static_cast<int>(shifts_.size()); }
  const std::vector<int>& shifts() const { return shifts_; }
  int operator[](int j) const { return shifts_.at(static_cast<std::size_t>(j)); }
  int reverse(int j) const { return (k_ - (*this)[j]) % k_; }

  friend bool operator==(const ShiftAssignment&, const ShiftAssignment&) = default;
  friend auto operator<=>(const ShiftAssignment&, const ShiftAssignment&) = default;

 private:
  int k_ = 2;
  std::vector<int> shifts_;
};

/// Per-edge sets of allowed shift values (each sorted ascending).
using ShiftMask = std::vector<std::vector<int>>;

inline ShiftMask uniform_mask(int m, std::vector<int> allowed) {
  return ShiftMask(static_cast<std::size_t>(m), std::move(allowed));
}

/// Entrywise (a + b) mod k where a, b are read as integers.
inline ShiftAssignment add_shifts(const ShiftAssignment& a, const ShiftAssignment& b,
                                  int k) {
  if (a.m() != b.m()) throw InputError("add_shifts: length mismatch");
  std::vector<int> s(static_cast<std::size_t>(a.m()));
  for (int j = 0; j < a.m(); ++j) s[j] = (a[j] + b[j]) % k;
  return ShiftAssignment(k, std::move(s));
}

/// omega^e for omega = exp(2 pi i / k). Quarter-turn multiples are exact.
inline Complex unit_root(int k, long long e) {
  const long long r = ((e % k) + k) % k;
  if ((4 * r) % k == 0) {
    switch ((4 * r) / k) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / k);
}

/// A_s(omega^i): Hermitian n x n matrix whose entry (u,v) on an edge is
/// omega^(i * s(u,v)).
struct QuotientMatrix {
  ComplexMatrix entries;
  int k = 2;
  int root_power = 0;
};

inline void require_matching(const Graph& g, const ShiftAssignment& s, const char* who) {
  if (s.m() != g.m())
    throw InputError(std::string(who) + ": assignment has " + std::to_string(s.m()) +
                     " shifts but graph has " + std::to_string(g.m()) + " edges");
}

inline ComplexMatrix adjacency_matrix(const Graph& g) {
  ComplexMatrix a = ComplexMatrix::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) a(u - 1, v - 1) = a(v - 1, u - 1) = 1.0;
  return a;
}

/// Matrix with entry t^s(u,v) on each oriented edge and the conjugate on the
/// reverse; t is any unit complex number.
inline ComplexMatrix shift_matrix(const Graph& g, const ShiftAssignment& s,
                                  const std::vector<Complex>& powers_of_t) {
  ComplexMatrix a = ComplexMatrix::Zero(g.n(), g.n());
  for (int j = 0; j < g.m(); ++j) {
    const auto [u, v] = g.edge(j);
    const Complex z = powers_of_t[static_cast<std::size_t>(s[j])];
    a(u - 1, v - 1) = z;
    a(v - 1, u - 1) = std::conj(z);
  }
  return a;
}

inline QuotientMatrix quotient_matrix(const Graph& g, const ShiftAssignment& s, int i) {
  require_matching(g, s, "quotient_matrix");
  const int k = s.k();
  if (i < 0 || i >= k)
    throw InputError("quotient_matrix: root power " + std::to_string(i) +
                     " outside [0," + std::to_string(k) + ")");
  std::vector<Complex> powers(static_cast<std::size_t>(k));
  for (int e = 0; e < k; ++e) powers[e] = unit_root(k, static_cast<long long>(i) * e);
  return {shift_matrix(g, s, powers), k, i};
}

/// Lifted vertex index of (v, layer).
inline Vertex lifted_vertex(Vertex v, int layer, int k) { return (v - 1) * k + layer + 1; }

/// The shift k-lift: vertex (v, l) is (v-1)k + l + 1 and each edge (u,v)
/// with shift s becomes the k edges (u,l) - (v,(l+s) mod k).
inline Graph expand_lift(const Graph& g, const ShiftAssignment& s) {
  require_matching(g, s, "expand_lift");
  const int k = s.k();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.m()) * k);
  for (int j = 0; j < g.m(); ++j) {
    const auto [u, v] = g.edge(j);
    for (int l = 0; l < k; ++l)
      edges.emplace_back(lifted_vertex(u, l, k), lifted_vertex(v, (l + s[j]) % k, k));
  }
  std::optional<Bipartition> bp;
  if (g.bipartition()) {
    bp.emplace();
    for (Vertex v : g.bipartition()->left)
      for (int l = 0; l < k; ++l) bp->left.push_back(lifted_vertex(v, l, k));
    for (Vertex v : g.bipartition()->right)
      for (int l = 0; l < k; ++l) bp->right.push_back(lifted_vertex(v, l, k));
  }
  return Graph(g.n() * k, std::move(edges), std::move(bp));
}

/// Lazily enumerated product of per-edge allowed shift sets, in
/// lexicographic order (edge e_1 most significant). Index ranges may be split
/// into disjoint sub-ranges for parallel consumption.
class AssignmentRange {
 public:
  AssignmentRange(int m, int k, std::optional<ShiftMask> mask = std::nullopt)
      : k_(k) {
    if (k < 2) throw InputError("enumerate_assignments: k must be >= 2");
    if (m < 0) throw InputError("enumerate_assignments: negative edge count");
    if (mask) {
      if (static_cast<int>(mask->size()) != m)
        throw InputError("enumerate_assignments: mask length differs from edge count");
      allowed_ = std::move(*mask);
      for (auto& a : allowed_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        if (a.empty()) throw InputError("enumerate_assignments: empty allowed set");
        for (int v : a)
          if (v < 0 || v >= k)
            throw InputError("enumerate_assignments: allowed value out of range");
      }
    } else {
      std::vector<int> all(static_cast<std::size_t>(k));
      std::iota(all.begin(), all.end(), 0);
      allowed_.assign(static_cast<std::size_t>(m), all);
    }
    total_ = 1;
    for (const auto& a : allowed_) {
      if (__builtin_mul_overflow(*total_, static_cast<std::uint64_t>(a.size()), &*total_)) {
        total_.reset();
        break;
      }
    }
    last_ = total_.value_or(std::numeric_limits<std::uint64_t>::max());
  }

  int m() const { return static_cast<int>(allowed_.size()); }
  int k() const { return k_; }
  const ShiftMask& allowed() const { return allowed_; }

  /// Number of assignments in the full product; nullopt if beyond 2^64.
  std::optional<std::uint64_t> total() const { return total_; }
  std::uint64_t first() const { return first_; }
  std::uint64_t last() const { return last_; }
  std::uint64_t size() const { return last_ - first_; }

  /// Restriction to lexicographic indices [first, last).
  AssignmentRange subrange(std::uint64_t first, std::uint64_t last) const {
    AssignmentRange r = *this;
    r.first_ = std::min(first, last_);
    r.last_ = std::clamp(last, r.first_, last_);
    return r;
  }

  /// Digits (positions into each allowed set) of a lexicographic index.
  std::vector<int> digits(std::uint64_t index) const {
    std::vector<int> d(allowed_.size(), 0);
    for (std::size_t j = allowed_.size(); j-- > 0;) {
      const auto base = static_cast<std::uint64_t>(allowed_[j].size());
      d[j] = static_cast<int>(index % base);
      index /= base;
    }
    return d;
  }

  ShiftAssignment at(std::uint64_t index) const {
    auto d = digits(index);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = allowed_[j][d[j]];
    return ShiftAssignment(k_, std::move(d));
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ShiftAssignment;
    using difference_type = std::ptrdiff_t;
    using reference = const ShiftAssignment&;
    using pointer = const ShiftAssignment*;

    iterator() = default;
    iterator(const AssignmentRange* range, std::uint64_t index)
        : range_(range), index_(index) {
      if (range_ && index_ < range_->last_) {
        digits_ = range_->digits(index_);
        current_ = range_->at(index_);
      }
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    std::uint64_t index() const { return index_; }

    iterator& operator++() {
      ++index_;
      if (index_ >= range_->last_) return *this;
      // Odometer step from the least significant edge.
      std::vector<int> shifts = current_.shifts();
      for (std::size_t j = digits_.size(); j-- > 0;) {
        const auto& a = range_->allowed_[j];
        if (++digits_[j] < static_cast<int>(a.size())) {
          shifts[j] = a[digits_[j]];
          break;
        }
        digits_[j] = 0;
        shifts[j] = a[0];
      }
      current_ = ShiftAssignment(range_->k_, std::move(shifts));
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    const AssignmentRange* range_ = nullptr;
    std::uint64_t index_ = 0;
    std::vector<int> digits_;
    ShiftAssignment current_;
  };

  iterator begin() const { return iterator(this, first_); }
  iterator end() const { return iterator(this, last_); }

 private:
  int k_;
  ShiftMask allowed_;
  std::optional<std::uint64_t> total_;
  std::uint64_t first_ = 0;
  std::uint64_t last_ = 0;
};

inline AssignmentRange enumerate_assignments(int m, int k,
                                             std::optional<ShiftMask> mask = std::nullopt) {
  return AssignmentRange(m, k, std::move(mask));
}

}  // namespace shiftlift
