#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tksub/rational.hpp"

namespace tksub {

enum class Side : unsigned char { A = 0, B = 1 };

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyGraphError : GraphError {
  explicit EmptyGraphError(const std::string& what = "operation requires a nonempty graph")
      : GraphError(what) {}
};
struct InvalidEdgeError : GraphError {
  explicit InvalidEdgeError(const std::string& what) : GraphError(what) {}
};
struct NotBipartiteError : GraphError {
  explicit NotBipartiteError(const std::string& what = "graph is not labeled bipartite")
      : GraphError(what) {}
};
struct TooLargeError : GraphError {
  explicit TooLargeError(const std::string& what) : GraphError(what) {}
};

// Sorted set of vertex ids. Small wrapper so set algebra reads as algebra at
// call sites; everything stays deterministic because order is always by id.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  static VertexSet range(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    VertexSet s;
    s.ids_ = std::move(v);
    return s;
  }

  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(int v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  VertexSet unioned(const VertexSet& other) const {
    VertexSet out;
    out.ids_.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
  }
  VertexSet minus(const VertexSet& other) const {
    VertexSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
  }
  VertexSet intersect(const VertexSet& other) const {
    VertexSet out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
  }

  void insert(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
  }

  bool operator==(const VertexSet& other) const { return ids_ == other.ids_; }

 private:
  std::vector<int> ids_;
};

// A walk with no repeated vertices; consecutive entries must be adjacent in
// whatever graph the path is interpreted against. A single vertex is a valid
// path of length 0.
struct Path {
  std::vector<int> verts;

  int length() const { return static_cast<int>(verts.size()) - 1; }
};

// Immutable simple undirected graph.
//
// Vertex ids are stable: an induced subgraph keeps the ids of the graph it
// came from (absent vertices just stop being "present"). That way a
// certificate found deep inside a chain of restrictions is already expressed
// in the original input's ids and validates against it directly.
//
// Freshly built graphs have present ids exactly 0..n-1.
class Graph {
 public:
  class Builder {
   public:
    explicit Builder(int n) : adj_(static_cast<std::size_t>(n)) {
      if (n < 0) throw GraphError("vertex count must be nonnegative");
    }

    Builder& add_edge(int u, int v) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw InvalidEdgeError("self-loop at vertex " + std::to_string(u));
      const auto& row = adj_[static_cast<std::size_t>(u)];
      if (std::find(row.begin(), row.end(), v) != row.end())
        throw InvalidEdgeError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
      if (!sides_.empty() &&
          sides_[static_cast<std::size_t>(u)] == sides_[static_cast<std::size_t>(v)])
        throw NotBipartiteError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                " joins two vertices of the same side");
      adj_[static_cast<std::size_t>(u)].push_back(v);
      adj_[static_cast<std::size_t>(v)].push_back(u);
      ++m_;
      return *this;
    }

    Builder& set_sides(std::vector<Side> sides) {
      if (sides.size() != adj_.size()) throw GraphError("side label count != vertex count");
      sides_ = std::move(sides);
      return *this;
    }

    Graph build() {
      Graph g;
      g.adj_ = std::move(adj_);
      g.m_ = m_;
      g.present_.assign(g.adj_.size(), 1);
      g.vertices_.resize(g.adj_.size());
      for (std::size_t i = 0; i < g.adj_.size(); ++i) g.vertices_[i] = static_cast<int>(i);
      for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        auto dup = std::adjacent_find(nb.begin(), nb.end());
        if (dup != nb.end())
          throw InvalidEdgeError("duplicate edge at vertex " + std::to_string(*dup));
      }
      if (!sides_.empty()) {
        g.sides_ = std::move(sides_);
        g.check_sides_cross();
      }
      return g;
    }

   private:
    void check_vertex(int v) const {
      if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
        throw InvalidEdgeError("vertex id " + std::to_string(v) + " out of range");
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Side> sides_;
    std::size_t m_ = 0;
  };

  Graph() = default;

  int universe() const { return static_cast<int>(adj_.size()); }
  int n() const { return static_cast<int>(vertices_.size()); }
  std::size_t m() const { return m_; }
  const std::vector<int>& vertices() const { return vertices_; }
  bool present(int v) const {
    return v >= 0 && static_cast<std::size_t>(v) < present_.size() &&
           present_[static_cast<std::size_t>(v)];
  }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  bool has_edge(int u, int v) const {
    if (!present(u) || !present(v)) return false;
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    const auto& nv = adj_[static_cast<std::size_t>(v)];
    const auto& shorter = nu.size() <= nv.size() ? nu : nv;
    int target = nu.size() <= nv.size() ? v : u;
    return std::binary_search(shorter.begin(), shorter.end(), target);
  }

  bool has_sides() const { return !sides_.empty(); }
  Side side(int v) const {
    if (sides_.empty()) throw NotBipartiteError("graph carries no side labels");
    return sides_[static_cast<std::size_t>(v)];
  }
  VertexSet side_vertices(Side s) const {
    std::vector<int> out;
    for (int v : vertices_)
      if (side(v) == s) out.push_back(v);
    return VertexSet(std::move(out));
  }

  Rat avg_degree() const {
    if (n() == 0) throw EmptyGraphError();
    return Rat(2 * static_cast<long long>(m_), n());
  }
  int min_degree() const {
    if (n() == 0) throw EmptyGraphError();
    int best = degree(vertices_.front());
    for (int v : vertices_) best = std::min(best, degree(v));
    return best;
  }
  int max_degree() const {
    if (n() == 0) throw EmptyGraphError();
    int best = 0;
    for (int v : vertices_) best = std::max(best, degree(v));
    return best;
  }

  // Induced subgraph on keep (intersected with present). Same universe, same
  // ids; side labels survive.
  Graph induced(const VertexSet& keep) const {
    Graph g;
    g.adj_.assign(adj_.size(), {});
    g.present_.assign(adj_.size(), 0);
    g.sides_ = sides_;
    for (int v : keep)
      if (present(v)) {
        g.present_[static_cast<std::size_t>(v)] = 1;
        g.vertices_.push_back(v);
      }
    std::size_t m = 0;
    for (int v : g.vertices_) {
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (g.present_[static_cast<std::size_t>(w)]) {
          g.adj_[static_cast<std::size_t>(v)].push_back(w);
          if (v < w) ++m;
        }
      }
    }
    g.m_ = m;
    return g;
  }

  // Bipartite restriction: vertices a and b stay present, only a-b edges
  // survive, side labels are (re)assigned accordingly. a and b must be
  // disjoint.
  Graph induced_bipartite(const VertexSet& a, const VertexSet& b) const {
    if (!a.intersect(b).empty()) throw GraphError("induced_bipartite: sides intersect");
    Graph g;
    g.adj_.assign(adj_.size(), {});
    g.present_.assign(adj_.size(), 0);
    std::vector<Side> sides(adj_.size(), Side::A);
    std::vector<char> in_b(adj_.size(), 0);
    for (int v : a)
      if (present(v)) {
        g.present_[static_cast<std::size_t>(v)] = 1;
        g.vertices_.push_back(v);
      }
    for (int v : b)
      if (present(v)) {
        g.present_[static_cast<std::size_t>(v)] = 1;
        g.vertices_.push_back(v);
        in_b[static_cast<std::size_t>(v)] = 1;
        sides[static_cast<std::size_t>(v)] = Side::B;
      }
    std::sort(g.vertices_.begin(), g.vertices_.end());
    std::size_t m = 0;
    for (int v : g.vertices_) {
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (!g.present_[static_cast<std::size_t>(w)]) continue;
        if (in_b[static_cast<std::size_t>(v)] == in_b[static_cast<std::size_t>(w)]) continue;
        g.adj_[static_cast<std::size_t>(v)].push_back(w);
        if (v < w) ++m;
      }
    }
    g.m_ = m;
    g.sides_ = std::move(sides);
    return g;
  }

  // Keep, for every vertex of `from`, only its first `cap` neighbors in `to`
  // (ascending id). Edges not running between from and to are dropped too;
  // the result is the capped bipartite graph between the two sets.
  Graph cap_degrees_toward(const VertexSet& from, const VertexSet& to, int cap) const {
    Graph g;
    g.adj_.assign(adj_.size(), {});
    g.present_.assign(adj_.size(), 0);
    std::vector<Side> sides(adj_.size(), Side::A);
    for (int v : from)
      if (present(v)) {
        g.present_[static_cast<std::size_t>(v)] = 1;
        g.vertices_.push_back(v);
      }
    for (int v : to)
      if (present(v)) {
        g.present_[static_cast<std::size_t>(v)] = 1;
        g.vertices_.push_back(v);
        sides[static_cast<std::size_t>(v)] = Side::B;
      }
    std::sort(g.vertices_.begin(), g.vertices_.end());
    g.vertices_.erase(std::unique(g.vertices_.begin(), g.vertices_.end()), g.vertices_.end());
    std::size_t m = 0;
    for (int v : from) {
      if (!present(v)) continue;
      int kept = 0;
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (kept >= cap) break;
        if (!g.present_[static_cast<std::size_t>(w)] || !to.contains(w)) continue;
        g.adj_[static_cast<std::size_t>(v)].push_back(w);
        g.adj_[static_cast<std::size_t>(w)].push_back(v);
        ++kept;
        ++m;
      }
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    g.m_ = m;
    g.sides_ = std::move(sides);
    return g;
  }

  VertexSet vertex_set() const { return VertexSet(vertices_); }

 private:
  void check_sides_cross() const {
    for (int v : vertices_)
      for (int w : adj_[static_cast<std::size_t>(v)])
        if (sides_[static_cast<std::size_t>(v)] == sides_[static_cast<std::size_t>(w)])
          throw NotBipartiteError("edge " + std::to_string(v) + "-" + std::to_string(w) +
                                  " joins two vertices with the same side label");
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> vertices_;
  std::vector<char> present_;
  std::vector<Side> sides_;
  std::size_t m_ = 0;
};

}  // namespace tksub
