#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftlift {

/// Raised for malformed caller input (bad degree, bad files, shape mismatch).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vertex = int;  // 1-based
using Edge = std::pair<Vertex, Vertex>;

/// Two vertex classes; every edge of the owning graph crosses them.
struct Bipartition {
  std::vector<Vertex> left;
  std::vector<Vertex> right;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Simple undirected graph on vertices 1..n.
///
/// Edges are stored oriented u < v and sorted lexicographically; that order
/// is the edge order e_1..e_m every shift assignment refers to. Immutable
/// after construction.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges,
        std::optional<Bipartition> bipartition = std::nullopt)
      : n_(n), edges_(std::move(edges)), bipartition_(std::move(bipartition)) {
    if (n_ < 0) throw InputError("graph: negative vertex count");
    for (auto& [u, v] : edges_) {
      if (u < 1 || v < 1 || u > n_ || v > n_)
        throw InputError("graph: edge endpoint out of range 1.." +
                         std::to_string(n_));
      if (u == v)
        throw InputError("graph: self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw InputError("graph: duplicate edge (multigraphs are not supported)");

    if (bipartition_) check_bipartition(*bipartition_);

    adjacency_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const auto& [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int j) const { return edges_.at(static_cast<std::size_t>(j)); }
  const std::optional<Bipartition>& bipartition() const { return bipartition_; }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  /// Index of edge {u,v} in the canonical order, or -1.
  int edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v}) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ &&
           a.bipartition_ == b.bipartition_;
  }

 private:
  void check_bipartition(Bipartition& bp) const {
    std::vector<int> side(static_cast<std::size_t>(n_) + 1, -1);
    auto mark = [&](std::vector<Vertex>& cls, int s) {
      std::sort(cls.begin(), cls.end());
      for (Vertex v : cls) {
        if (v < 1 || v > n_)
          throw InputError("graph: bipartition vertex out of range");
        if (side[v] != -1)
          throw InputError("graph: vertex " + std::to_string(v) +
                           " listed twice in bipartition");
        side[v] = s;
      }
    };
    mark(bp.left, 0);
    mark(bp.right, 1);
    for (Vertex v = 1; v <= n_; ++v)
      if (side[v] == -1)
        throw InputError("graph: bipartition misses vertex " +
                         std::to_string(v));
    for (const auto& [u, v] : edges_)
      if (side[u] == side[v])
        throw InputError("graph: edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ") does not cross bipartition");
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::optional<Bipartition> bipartition_;
  std::vector<std::vector<Vertex>> adjacency_;
};

struct RegularityReport {
  bool is_regular = false;
  std::optional<int> degree;  // present iff is_regular
  bool is_bipartite = false;
  bool is_connected = false;
};

/// 2-coloring by BFS; the class containing the smallest vertex of each
/// component goes left. Empty when the graph has an odd cycle.
inline std::optional<Bipartition> two_coloring(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.n()) + 1, -1);
  for (Vertex start = 1; start <= g.n(); ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<Vertex> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          frontier.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition bp;
  for (Vertex v = 1; v <= g.n(); ++v)
    (color[v] == 0 ? bp.left : bp.right).push_back(v);
  return bp;
}

inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.n()) + 1, false);
  std::vector<Vertex> stack{1};
  seen[1] = true;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.n();
}

/// Structural facts about g. The stored bipartition is not trusted; the
/// bipartite flag comes from a fresh 2-coloring.
inline RegularityReport validate(const Graph& g) {
  RegularityReport r;
  if (g.n() > 0) {
    const int d0 = g.degree(1);
    r.is_regular = true;
    for (Vertex v = 2; v <= g.n(); ++v)
      if (g.degree(v) != d0) {
        r.is_regular = false;
        break;
      }
    if (r.is_regular) r.degree = d0;
  }
  r.is_bipartite = two_coloring(g).has_value();
  r.is_connected = is_connected(g);
  return r;
}

// --- standard graphs ---------------------------------------------------------

/// K_{d,d} with classes {1..d} | {d+1..2d}.
inline Graph complete_bipartite(int d) {
  if (d < 1) throw InputError("complete_bipartite: degree must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(d) * d);
  Bipartition bp;
  for (Vertex u = 1; u <= d; ++u) {
    bp.left.push_back(u);
    bp.right.push_back(d + u);
    for (Vertex v = d + 1; v <= 2 * d; ++v) edges.emplace_back(u, v);
  }
  return Graph(2 * d, std::move(edges), std::move(bp));
}

/// K_{a,b} with classes {1..a} | {a+1..a+b}.
inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1)
    throw InputError("complete_bipartite: class sizes must be >= 1");
  std::vector<Edge> edges;
  Bipartition bp;
  for (Vertex u = 1; u <= a; ++u) bp.left.push_back(u);
  for (Vertex v = a + 1; v <= a + b; ++v) bp.right.push_back(v);
  for (Vertex u = 1; u <= a; ++u)
    for (Vertex v = a + 1; v <= a + b; ++v) edges.emplace_back(u, v);
  return Graph(a + b, std::move(edges), std::move(bp));
}

/// Path on n vertices 1-2-...-n.
inline Graph path_graph(int n) {
  if (n < 1) throw InputError("path_graph: need at least one vertex");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

/// Cycle 1-2-...-n-1.
inline Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle_graph: need at least three vertices");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(1, n);
  return Graph(n, std::move(edges));
}

/// Star with center 1 and `leaves` leaves.
inline Graph star_graph(int leaves) {
  if (leaves < 1) throw InputError("star_graph: need at least one leaf");
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= leaves + 1; ++v) edges.emplace_back(1, v);
  return Graph(leaves + 1, std::move(edges));
}

/// Vertices of b are renumbered after those of a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (auto [u, v] : b.edges()) edges.emplace_back(u + a.n(), v + a.n());
  return Graph(a.n() + b.n(), std::move(edges));
}

/// Copy of g carrying its computed 2-coloring (or none, if not bipartite).
inline Graph with_computed_bipartition(const Graph& g) {
  return Graph(g.n(), g.edges(), two_coloring(g));
}

}  // namespace shiftlift
