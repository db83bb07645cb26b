#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"

namespace tksub {

namespace detail {

// One greedy attempt at a TK_target. Cores are fixed by the caller; pairs are
// connected most-constrained-first: after every placement, re-plan all open
// pairs and commit the one whose current shortest path is longest. Fails as
// soon as some open pair has no path left.
inline std::optional<SubdivisionCertificate> tk_attempt(const Graph& g,
                                                        const std::vector<int>& cores) {
  VertexSet core_set(cores);
  std::vector<std::pair<int, int>> open;
  for (std::size_t i = 0; i < cores.size(); ++i)
    for (std::size_t j = i + 1; j < cores.size(); ++j)
      open.emplace_back(cores[i], cores[j]);

  VertexSet used;  // interiors of committed paths
  std::vector<std::vector<int>> placed;

  while (!open.empty()) {
    int best = -1;
    int best_len = -1;
    std::vector<Path> plans(open.size());
    for (std::size_t k = 0; k < open.size(); ++k) {
      auto [u, v] = open[k];
      VertexSet others = core_set.minus(VertexSet({u, v}));
      auto p = shortest_path_between_sets(g, VertexSet({u}), VertexSet({v}),
                                          used.unioned(others), g.n());
      if (!p) return std::nullopt;
      plans[k] = *p;
      if (p->length() > best_len) {
        best_len = p->length();
        best = static_cast<int>(k);
      }
    }
    const auto& seq = plans[static_cast<std::size_t>(best)].verts;
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) used.insert(seq[i]);
    placed.push_back(seq);
    open.erase(open.begin() + best);
  }
  return SubdivisionCertificate::make(cores, std::move(placed));
}

// Core seeds. Variant 0: the `target` highest-degree vertices (ties low id).
// Variant 1: highest-degree start, then repeatedly the vertex farthest from
// the chosen set (ties by degree, then id) — spreads cores apart.
inline std::vector<int> tk_core_seed(const Graph& g, int target, int variant) {
  std::vector<int> verts = g.vertices();
  if (variant == 0) {
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    verts.resize(static_cast<std::size_t>(target));
    std::sort(verts.begin(), verts.end());
    return verts;
  }
  int first = verts.front();
  for (int v : verts)
    if (g.degree(v) > g.degree(first)) first = v;
  std::vector<int> chosen{first};
  std::vector<int> best_dist(static_cast<std::size_t>(g.universe()), -1);
  auto relax = [&](int src) {
    auto d = bfs_distances(g, src, g.n());
    for (int v : g.vertices()) {
      int dv = d[static_cast<std::size_t>(v)];
      if (dv < 0) dv = g.n() + 1;  // unreachable counts as maximally far
      int& cur = best_dist[static_cast<std::size_t>(v)];
      if (cur < 0 || dv < cur) cur = dv;
    }
  };
  relax(first);
  while (static_cast<int>(chosen.size()) < target) {
    int pick = -1;
    for (int v : g.vertices()) {
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
      if (pick < 0) {
        pick = v;
        continue;
      }
      int dv = best_dist[static_cast<std::size_t>(v)];
      int dp = best_dist[static_cast<std::size_t>(pick)];
      if (dv > dp || (dv == dp && g.degree(v) > g.degree(pick))) pick = v;
    }
    chosen.push_back(pick);
    relax(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Any cycle, as its vertex sequence, or nullopt on a forest.
inline std::optional<std::vector<int>> any_cycle(const Graph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.universe()), -2);
  for (int root : g.vertices()) {
    if (parent[static_cast<std::size_t>(root)] != -2) continue;
    parent[static_cast<std::size_t>(root)] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        if (parent[static_cast<std::size_t>(w)] == -2) {
          parent[static_cast<std::size_t>(w)] = v;
          stack.push_back(w);
        } else if (w != parent[static_cast<std::size_t>(v)]) {
          // two tree paths to the root; splice at their meeting point
          std::vector<int> pv{v}, pw{w};
          for (int x = v; x != -1; x = parent[static_cast<std::size_t>(x)])
            if (x != v) pv.push_back(x);
          for (int x = w; x != -1; x = parent[static_cast<std::size_t>(x)])
            if (x != w) pw.push_back(x);
          // find lowest common ancestor by membership
          std::vector<char> on_pv(static_cast<std::size_t>(g.universe()), 0);
          for (int x : pv) on_pv[static_cast<std::size_t>(x)] = 1;
          int lca = -1;
          for (int x : pw)
            if (on_pv[static_cast<std::size_t>(x)]) {
              lca = x;
              break;
            }
          std::vector<int> cyc;
          for (int x : pv) {
            cyc.push_back(x);
            if (x == lca) break;
          }
          std::vector<int> half;
          for (int x : pw) {
            if (x == lca) break;
            half.push_back(x);
          }
          std::reverse(half.begin(), half.end());
          cyc.insert(cyc.end(), half.begin(), half.end());
          if (cyc.size() >= 3) return cyc;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Valid topological-clique certificate, as large as a shrinking greedy ladder
// manages. target 0 means auto: ceil(sqrt(avg degree)), at least 3. The
// ladder tries two deterministic core seeds per target, falls back to any
// cycle (a TK_3) and finally a single edge (TK_2) or vertex (TK_1), so a
// valid certificate always comes back.
inline SubdivisionCertificate generic_tk(const Graph& g, int target = 0) {
  if (g.n() == 0) throw EmptyGraphError("generic_tk on empty graph");

  if (g.n() <= 9) {
    auto res = brute_force_max_tk(g, target > 0 ? target : -1);
    return res.witness;
  }

  int start = target > 0 ? target : std::max(3, static_cast<int>(std::ceil(
                                                    std::sqrt(g.avg_degree().to_double()))));
  start = std::min(start, g.n());

  for (int t = start; t >= 3; --t) {
    for (int variant = 0; variant < 2; ++variant) {
      auto cores = detail::tk_core_seed(g, t, variant);
      auto cert = detail::tk_attempt(g, cores);
      if (cert) return *cert;
    }
    if (t == 3) {
      if (auto cyc = detail::any_cycle(g)) {
        const auto& c = *cyc;
        std::vector<int> cores{c[0], c[1], c[2]};
        std::vector<std::vector<int>> paths;
        paths.push_back({c[0], c[1]});
        paths.push_back({c[1], c[2]});
        std::vector<int> around{c[0]};
        for (std::size_t i = c.size(); i-- > 2;) around.push_back(c[i]);
        paths.push_back(std::move(around));
        return SubdivisionCertificate::make(std::move(cores), std::move(paths));
      }
    }
  }
  // forest or near-edgeless territory
  for (int v : g.vertices())
    for (int w : g.neighbors(v))
      if (v < w) return SubdivisionCertificate::make({v, w}, {{v, w}});
  return SubdivisionCertificate::make({g.vertices().front()}, {});
}

}  // namespace tksub
