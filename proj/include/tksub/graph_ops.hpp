#pragma once

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "tksub/graph.hpp"
#include "tksub/rng.hpp"

namespace tksub {

struct DegreeStats {
  int n = 0;
  long long m = 0;
  Rat avg;
  int min_deg = 0;
  int max_deg = 0;
};

inline DegreeStats degree_stats(const Graph& g) {
  if (g.n() == 0) throw EmptyGraphError("degree_stats on empty graph");
  DegreeStats s;
  s.n = g.n();
  s.m = static_cast<long long>(g.m());
  s.avg = g.avg_degree();
  s.min_deg = g.min_degree();
  s.max_deg = g.max_degree();
  return s;
}

// External neighborhood: all present vertices adjacent to X but not in X.
inline VertexSet external_neighborhood(const Graph& g, const VertexSet& x) {
  std::vector<char> in_x(static_cast<std::size_t>(g.universe()), 0);
  for (int v : x)
    if (g.present(v)) in_x[static_cast<std::size_t>(v)] = 1;
  std::vector<char> seen(static_cast<std::size_t>(g.universe()), 0);
  std::vector<int> out;
  for (int v : x) {
    if (!g.present(v)) continue;
    for (int w : g.neighbors(v)) {
      if (!in_x[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        out.push_back(w);
      }
    }
  }
  return VertexSet(std::move(out));
}

namespace detail {
// Distances from v, capped at radius. -1 means unreached or absent.
inline std::vector<int> bfs_distances(const Graph& g, int v, int radius) {
  std::vector<int> dist(static_cast<std::size_t>(g.universe()), -1);
  if (!g.present(v)) throw GraphError("bfs from absent vertex " + std::to_string(v));
  dist[static_cast<std::size_t>(v)] = 0;
  std::deque<int> q{v};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    int du = dist[static_cast<std::size_t>(u)];
    if (du == radius) continue;
    for (int w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}
}  // namespace detail

// Vertices at distance exactly radius from v.
inline VertexSet sphere(const Graph& g, int v, int radius) {
  auto dist = detail::bfs_distances(g, v, radius);
  std::vector<int> out;
  for (int u : g.vertices())
    if (dist[static_cast<std::size_t>(u)] == radius) out.push_back(u);
  return VertexSet(std::move(out));
}

// Vertices at distance at most radius from v (v included).
inline VertexSet ball(const Graph& g, int v, int radius) {
  auto dist = detail::bfs_distances(g, v, radius);
  std::vector<int> out;
  for (int u : g.vertices()) {
    int d = dist[static_cast<std::size_t>(u)];
    if (d >= 0 && d <= radius) out.push_back(u);
  }
  return VertexSet(std::move(out));
}

// N_i(S): vertices at distance exactly i from every vertex of S.
inline VertexSet common_i_neighborhood(const Graph& g, const std::vector<int>& s, int i) {
  if (s.empty()) throw GraphError("common_i_neighborhood of empty set");
  std::optional<VertexSet> acc;
  std::vector<int> distinct = s;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int v : distinct) {
    VertexSet sp = sphere(g, v, i);
    acc = acc ? acc->intersect(sp) : sp;
    if (acc->empty()) break;
  }
  return *acc;
}

// Shortest path with an endpoint in `from`, an endpoint in `to`, every
// internal vertex outside from, to and forbidden, and length <= budget.
// from and to must not meet forbidden. Ties resolve by BFS discovery order
// with sorted frontiers and adjacency, so the result is deterministic.
inline std::optional<Path> shortest_path_between_sets(const Graph& g, const VertexSet& from,
                                                      const VertexSet& to,
                                                      const VertexSet& forbidden, int budget) {
  if (from.empty() || to.empty()) throw GraphError("shortest_path_between_sets: empty endpoint set");
  if (!from.intersect(forbidden).empty() || !to.intersect(forbidden).empty())
    throw GraphError("shortest_path_between_sets: endpoint set meets forbidden set");

  VertexSet both = from.intersect(to);
  for (int v : both)
    if (g.present(v)) return Path{{v}};

  std::size_t u = static_cast<std::size_t>(g.universe());
  std::vector<char> blocked(u, 0);  // may not be internal
  for (int v : forbidden) blocked[static_cast<std::size_t>(v)] = 1;
  for (int v : from) blocked[static_cast<std::size_t>(v)] = 1;
  for (int v : to) blocked[static_cast<std::size_t>(v)] = 1;
  std::vector<char> is_to(u, 0);
  for (int v : to)
    if (g.present(v)) is_to[static_cast<std::size_t>(v)] = 1;

  std::vector<int> parent(u, -2);  // -2 unvisited, -1 root
  std::deque<int> q;
  std::vector<int> level(u, 0);
  for (int v : from) {
    if (!g.present(v)) continue;
    parent[static_cast<std::size_t>(v)] = -1;
    q.push_back(v);
  }
  if (q.empty()) throw GraphError("shortest_path_between_sets: no present vertex in from");
  if (budget < 1) return std::nullopt;

  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (level[static_cast<std::size_t>(x)] >= budget) continue;
    for (int w : g.neighbors(x)) {
      std::size_t wi = static_cast<std::size_t>(w);
      if (is_to[wi]) {
        std::vector<int> rev{w};
        for (int cur = x; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) rev.push_back(cur);
        std::reverse(rev.begin(), rev.end());
        return Path{std::move(rev)};
      }
      if (parent[wi] != -2 || blocked[wi]) continue;
      parent[wi] = x;
      level[wi] = level[static_cast<std::size_t>(x)] + 1;
      if (level[wi] < budget) q.push_back(w);
    }
  }
  return std::nullopt;
}

// Cycle of some requested length (lengths within 3..8), or nullopt. 3- and
// 4-cycles go through closed-form scans; longer lengths use bounded path
// enumeration anchored at the cycle's minimum vertex, pruned by distance back
// to the anchor. Exact, not sampled.
inline std::optional<std::vector<int>> has_short_cycle(const Graph& g,
                                                       const std::vector<int>& lengths) {
  std::vector<char> want(9, 0);
  for (int l : lengths) {
    if (l < 3 || l > 8) throw GraphError("has_short_cycle supports lengths 3..8");
    want[static_cast<std::size_t>(l)] = 1;
  }

  if (want[3]) {
    for (int v : g.vertices()) {
      const auto& nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] < v) continue;
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          if (nb[j] < v) continue;
          if (g.has_edge(nb[i], nb[j])) return std::vector<int>{v, nb[i], nb[j]};
        }
      }
    }
  }

  if (want[4]) {
    // pair (u,w) with two common neighbors x1,x2 -> u x1 w x2
    std::vector<int> first_common(static_cast<std::size_t>(g.universe()), -1);
    for (int u : g.vertices()) {
      for (int w : g.vertices()) first_common[static_cast<std::size_t>(w)] = -1;
      for (int x : g.neighbors(u)) {
        for (int w : g.neighbors(x)) {
          if (w <= u) continue;
          int& fc = first_common[static_cast<std::size_t>(w)];
          if (fc < 0) {
            fc = x;
          } else if (fc != x) {
            return std::vector<int>{u, fc, w, x};
          }
        }
      }
    }
  }

  int lmax = 0;
  for (int l = 5; l <= 8; ++l)
    if (want[static_cast<std::size_t>(l)]) lmax = l;
  if (lmax == 0) return std::nullopt;

  // DFS over simple paths v0..x with all vertices > v0, closing when the
  // next edge returns to v0 at a wanted length.
  std::vector<char> on_path(static_cast<std::size_t>(g.universe()), 0);
  std::vector<int> path;
  for (int v0 : g.vertices()) {
    auto dist0 = detail::bfs_distances(g, v0, lmax);
    path.assign(1, v0);
    on_path[static_cast<std::size_t>(v0)] = 1;
    // iterative DFS: stack of (vertex, next neighbor index)
    std::vector<std::pair<int, std::size_t>> stack{{v0, 0}};
    std::optional<std::vector<int>> found;
    while (!stack.empty() && !found) {
      auto& [x, idx] = stack.back();
      const auto& nb = g.neighbors(x);
      if (idx >= nb.size()) {
        on_path[static_cast<std::size_t>(x)] = 0;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      int w = nb[idx++];
      int k = static_cast<int>(path.size());  // edges after adding w = k
      if (w == v0) {
        if (k >= 3 && k <= 8 && want[static_cast<std::size_t>(k)]) found = path;
        continue;
      }
      if (w < v0 || on_path[static_cast<std::size_t>(w)]) continue;
      if (k >= lmax) continue;  // no room to extend and close
      int d0 = dist0[static_cast<std::size_t>(w)];
      if (d0 < 0 || d0 > lmax - k) continue;  // cannot get back in budget
      path.push_back(w);
      on_path[static_cast<std::size_t>(w)] = 1;
      stack.emplace_back(w, 0);
    }
    if (!stack.empty()) {
      for (auto& [x, idx] : stack) on_path[static_cast<std::size_t>(x)] = 0;
    }
    on_path[static_cast<std::size_t>(v0)] = 0;
    if (found) return found;
  }
  return std::nullopt;
}

// Spanning bipartite subgraph by seeded bisection plus single-vertex moves
// until no vertex has more same-side than cross-side neighbors. Keeps at
// least half the edges. If the input already carries side labels they seed
// the bisection, so a labeled bipartite graph comes back unchanged.
inline Graph bipartite_half(const Graph& g, std::uint64_t seed) {
  if (g.n() == 0) throw EmptyGraphError("bipartite_half on empty graph");
  std::vector<Side> lab(static_cast<std::size_t>(g.universe()), Side::A);
  if (g.has_sides()) {
    for (int v : g.vertices()) lab[static_cast<std::size_t>(v)] = g.side(v);
  } else {
    Rng rng(seed);
    for (int v : g.vertices())
      lab[static_cast<std::size_t>(v)] = rng.coin(0.5) ? Side::B : Side::A;
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v : g.vertices()) {
      int same = 0;
      for (int w : g.neighbors(v))
        if (lab[static_cast<std::size_t>(w)] == lab[static_cast<std::size_t>(v)]) ++same;
      int cross = g.degree(v) - same;
      if (same > cross) {
        lab[static_cast<std::size_t>(v)] =
            lab[static_cast<std::size_t>(v)] == Side::A ? Side::B : Side::A;
        moved = true;
      }
    }
  }
  std::vector<int> a, b;
  for (int v : g.vertices())
    (lab[static_cast<std::size_t>(v)] == Side::A ? a : b).push_back(v);
  return g.induced_bipartite(VertexSet(std::move(a)), VertexSet(std::move(b)));
}

enum class DensestMethod { exact, peeling };

namespace detail {

// Dinic max-flow, long long capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1) {}

  void add_edge(int u, int v, long long cap) {
    edges_.push_back({v, head_[static_cast<std::size_t>(u)], cap});
    head_[static_cast<std::size_t>(u)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[static_cast<std::size_t>(v)], 0});
    head_[static_cast<std::size_t>(v)] = static_cast<int>(edges_.size()) - 1;
  }

  long long run(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) total += f;
    }
    return total;
  }

  // After run(): vertices reachable from s in the residual graph.
  std::vector<char> min_cut_side(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> q{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
        const auto& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.cap > 0 && !seen[static_cast<std::size_t>(ed.to)]) {
          seen[static_cast<std::size_t>(ed.to)] = 1;
          q.push_back(ed.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    int next;
    long long cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::deque<int> q{s};
    level_[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
        const auto& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
          level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push_back(ed.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  long long dfs(int u, int t, long long limit) {
    if (u == t || limit == 0) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e >= 0;
         e = edges_[static_cast<std::size_t>(e)].next) {
      auto& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] ==
                            level_[static_cast<std::size_t>(u)] + 1) {
        long long f = dfs(ed.to, t, std::min(limit, ed.cap));
        if (f > 0) {
          ed.cap -= f;
          edges_[static_cast<std::size_t>(e ^ 1)].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<Edge> edges_;
};

}  // namespace detail

// Vertex set maximizing average degree of the induced subgraph.
//
// exact: Goldberg's flow construction with a binary search over guesses t/D,
// D = k^2, so adjacent guesses are closer than the minimum spacing between
// achievable densities and the final witness is exactly optimal.
// peeling: remove a minimum-degree vertex repeatedly, keep the densest prefix
// (the usual 1/2-approximation, for graphs where flow is too slow).
inline VertexSet densest_subgraph(const Graph& g, DensestMethod method = DensestMethod::exact) {
  if (g.m() == 0) throw EmptyGraphError("densest_subgraph needs at least one edge");
  const auto& verts = g.vertices();
  int k = g.n();

  if (method == DensestMethod::peeling) {
    std::vector<int> deg(static_cast<std::size_t>(g.universe()), -1);
    std::vector<char> alive(static_cast<std::size_t>(g.universe()), 0);
    for (int v : verts) {
      deg[static_cast<std::size_t>(v)] = g.degree(v);
      alive[static_cast<std::size_t>(v)] = 1;
    }
    long long edges_left = static_cast<long long>(g.m());
    std::vector<int> removal;
    removal.reserve(static_cast<std::size_t>(k));
    Rat best(-1, 1);
    int best_removed = 0;
    long long cur_edges = edges_left;
    int cur_n = k;
    // prefix 0 = whole graph
    best = Rat(2 * cur_edges, cur_n);
    for (int step = 0; step < k - 1; ++step) {
      int pick = -1;
      for (int v : verts)
        if (alive[static_cast<std::size_t>(v)] &&
            (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
          pick = v;
      alive[static_cast<std::size_t>(pick)] = 0;
      cur_edges -= deg[static_cast<std::size_t>(pick)];
      for (int w : g.neighbors(pick))
        if (alive[static_cast<std::size_t>(w)]) --deg[static_cast<std::size_t>(w)];
      removal.push_back(pick);
      --cur_n;
      Rat d(2 * cur_edges, cur_n);
      if (d > best) {
        best = d;
        best_removed = step + 1;
      }
    }
    std::vector<char> removed(static_cast<std::size_t>(g.universe()), 0);
    for (int i = 0; i < best_removed; ++i)
      removed[static_cast<std::size_t>(removal[static_cast<std::size_t>(i)])] = 1;
    std::vector<int> out;
    for (int v : verts)
      if (!removed[static_cast<std::size_t>(v)]) out.push_back(v);
    return VertexSet(std::move(out));
  }

  // exact
  std::vector<int> idx(static_cast<std::size_t>(g.universe()), -1);
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])] = i;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.m());
  for (int v : verts)
    for (int w : g.neighbors(v))
      if (v < w) edges.emplace_back(idx[static_cast<std::size_t>(v)], idx[static_cast<std::size_t>(w)]);

  long long mm = static_cast<long long>(edges.size());
  long long D = static_cast<long long>(k) * k;
  auto feasible = [&](long long t, std::vector<char>* side) {
    detail::MaxFlow mf(k + 2);
    int s = k, snk = k + 1;
    for (int i = 0; i < k; ++i) {
      mf.add_edge(s, i, mm * D);
      long long deg = g.degree(verts[static_cast<std::size_t>(i)]);
      mf.add_edge(i, snk, mm * D + 2 * t - D * deg);
    }
    for (auto [a, b] : edges) {
      mf.add_edge(a, b, D);
      mf.add_edge(b, a, D);
    }
    long long flow = mf.run(s, snk);
    bool ok = flow < static_cast<long long>(k) * mm * D;
    if (ok && side) *side = mf.min_cut_side(s);
    return ok;
  };

  long long lo = 0, hi = mm * D;  // feasible at lo (any edge), infeasible at hi
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (feasible(mid, nullptr)) lo = mid;
    else hi = mid;
  }
  std::vector<char> side;
  bool ok = feasible(lo, &side);
  if (!ok) throw GraphError("densest_subgraph: internal search failure");
  std::vector<int> out;
  for (int i = 0; i < k; ++i)
    if (side[static_cast<std::size_t>(i)]) out.push_back(verts[static_cast<std::size_t>(i)]);
  return VertexSet(std::move(out));
}

// Repeatedly delete vertices of degree < tau. The fixpoint is unique, so
// deletion order does not matter. Result may be empty.
inline Graph peel_min_degree(const Graph& g, const Rat& tau) {
  std::vector<long long> deg(static_cast<std::size_t>(g.universe()), 0);
  std::vector<char> alive(static_cast<std::size_t>(g.universe()), 0);
  std::deque<int> q;
  std::vector<char> queued(static_cast<std::size_t>(g.universe()), 0);
  for (int v : g.vertices()) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    alive[static_cast<std::size_t>(v)] = 1;
  }
  auto below = [&](int v) { return Rat(deg[static_cast<std::size_t>(v)], 1) < tau; };
  for (int v : g.vertices())
    if (below(v)) {
      q.push_back(v);
      queued[static_cast<std::size_t>(v)] = 1;
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    alive[static_cast<std::size_t>(v)] = 0;
    for (int w : g.neighbors(v)) {
      if (!alive[static_cast<std::size_t>(w)]) continue;
      --deg[static_cast<std::size_t>(w)];
      if (!queued[static_cast<std::size_t>(w)] && below(w)) {
        q.push_back(w);
        queued[static_cast<std::size_t>(w)] = 1;
      }
    }
  }
  std::vector<int> keep;
  for (int v : g.vertices())
    if (alive[static_cast<std::size_t>(v)]) keep.push_back(v);
  return g.induced(VertexSet(std::move(keep)));
}

}  // namespace tksub
