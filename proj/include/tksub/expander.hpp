#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/rational.hpp"
#include "tksub/rng.hpp"

namespace tksub {

struct DegenerateBudgetError : GraphError {
  explicit DegenerateBudgetError(const std::string& what) : GraphError(what) {}
};

// Expansion requirement for a set of size x: zero below t/5, then
// eps1 / ln^2(15x/t). x * epsilon(x) is increasing for x >= t/2.
inline double epsilon(double x, double eps1, double t) {
  if (x < t / 5.0) return 0.0;
  double lg = std::log(15.0 * x / t);
  return eps1 / (lg * lg);
}

// Worst-case diameter of an (eps1,t)-expander on n vertices, used as the
// path-length budget when connecting embedded pieces.
inline double diam_bound(int n, double t, double eps1) {
  double ratio = 15.0 * static_cast<double>(n) / t;
  if (ratio <= 1.0)
    throw DegenerateBudgetError("diameter bound undefined: 15n/t = " + std::to_string(ratio));
  double lg = std::log(ratio);
  return (2.0 / eps1) * lg * lg * lg;
}

struct ExpansionWitness {
  std::vector<int> x;    // the offending set
  int boundary = 0;      // |N(x) \ x|
  double required = 0.0; // epsilon(|x|) * |x|
};

// Checks every subset with t/2 <= |X| <= n/2 by bitmask sweep. Returns the
// first violating set in ascending mask order, or nothing if the graph is a
// genuine (eps1,t)-expander.
inline std::optional<ExpansionWitness> certify_exhaustive(const Graph& g, double eps1, double t) {
  int n = g.n();
  if (n > 18) throw TooLargeError("exhaustive expansion check handles at most 18 vertices");
  if (n == 0) throw EmptyGraphError("expansion check on empty graph");
  const auto& verts = g.vertices();
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int w : g.neighbors(verts[static_cast<std::size_t>(i)])) {
      int j = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
      adj[static_cast<std::size_t>(i)] |= 1u << j;
    }
  double lo = t / 2.0, hi = static_cast<double>(n) / 2.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int sz = std::popcount(mask);
    if (sz < lo || sz > hi) continue;
    std::uint32_t nbr = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) nbr |= adj[static_cast<std::size_t>(i)];
    int boundary = std::popcount(nbr & ~mask);
    double required = epsilon(sz, eps1, t) * sz;
    if (boundary < required) {
      ExpansionWitness w;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) w.x.push_back(verts[static_cast<std::size_t>(i)]);
      w.boundary = boundary;
      w.required = required;
      return w;
    }
  }
  return std::nullopt;
}

// Randomized search for a sparse cut. Each attempt grows a set from a random
// start, always absorbing the boundary vertex that contributes the fewest
// fresh neighbors (ties to lowest id); when a component is exhausted it jumps
// to the smallest untouched vertex. Any candidate below the expansion bar is
// re-verified from scratch before being returned.
inline std::optional<ExpansionWitness> find_violation(const Graph& g, double eps1, double t,
                                                      int effort, std::uint64_t seed) {
  int n = g.n();
  if (n == 0) return std::nullopt;
  const auto& verts = g.vertices();
  double lo = t / 2.0, hi = static_cast<double>(n) / 2.0;

  for (int attempt = 0; attempt < effort; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<char> in_s(static_cast<std::size_t>(g.universe()), 0);
    std::vector<char> in_b(static_cast<std::size_t>(g.universe()), 0);
    std::vector<int> s;
    std::vector<int> b;  // kept sorted

    auto absorb = [&](int v) {
      in_s[static_cast<std::size_t>(v)] = 1;
      if (in_b[static_cast<std::size_t>(v)]) {
        in_b[static_cast<std::size_t>(v)] = 0;
        b.erase(std::lower_bound(b.begin(), b.end(), v));
      }
      s.push_back(v);
      for (int w : g.neighbors(v))
        if (!in_s[static_cast<std::size_t>(w)] && !in_b[static_cast<std::size_t>(w)]) {
          in_b[static_cast<std::size_t>(w)] = 1;
          b.insert(std::lower_bound(b.begin(), b.end(), w), w);
        }
    };

    absorb(verts[rng.index(verts.size())]);
    while (static_cast<double>(s.size()) <= hi) {
      double sz = static_cast<double>(s.size());
      if (sz >= lo) {
        double required = epsilon(sz, eps1, t) * sz;
        if (static_cast<double>(b.size()) < required) {
          VertexSet xs(s);
          VertexSet ext = external_neighborhood(g, xs);
          double req2 = epsilon(static_cast<double>(xs.size()), eps1, t) *
                        static_cast<double>(xs.size());
          if (static_cast<double>(ext.size()) < req2) {
            ExpansionWitness w;
            w.x = xs.ids();
            w.boundary = static_cast<int>(ext.size());
            w.required = req2;
            return w;
          }
        }
      }
      if (static_cast<int>(s.size()) >= n) break;
      int pick = -1;
      if (b.empty()) {
        for (int v : verts)
          if (!in_s[static_cast<std::size_t>(v)]) {
            pick = v;
            break;
          }
        if (pick < 0) break;
      } else {
        int best_fresh = -1;
        for (int v : b) {
          int fresh = 0;
          for (int w : g.neighbors(v))
            if (!in_s[static_cast<std::size_t>(w)] && !in_b[static_cast<std::size_t>(w)]) ++fresh;
          if (best_fresh < 0 || fresh < best_fresh) {
            best_fresh = fresh;
            pick = v;
          }
        }
      }
      absorb(pick);
    }
  }
  return std::nullopt;
}

struct ExtractResult {
  Graph h;
  double t = 0.0;
  bool certified = false;
  int rounds = 0;
};

namespace detail {

// Peel at half the current average degree until stable. Average degree never
// drops during this process, and the classical counting argument keeps the
// graph nonempty.
inline Graph peel_to_half_avg(Graph h) {
  for (;;) {
    if (h.n() == 0 || h.m() == 0) return h;
    Rat tau(static_cast<long long>(h.m()), static_cast<long long>(h.n()));  // d/2
    Graph next = peel_min_degree(h, tau);
    if (next.n() == h.n()) return next;
    h = std::move(next);
  }
}

}  // namespace detail

// Finds a subgraph that expands at scale t = eps2 * d(H)^2 while keeping at
// least half the input's average degree. Starts from the densest subgraph,
// peels to minimum degree >= d/2, then repeatedly replaces H by the denser
// of the two sides of any sparse cut the randomized search can find.
inline ExtractResult extract_expander(const Graph& g, double eps1 = 0.05, double eps2 = 0.2,
                                      int effort = 20, std::uint64_t seed = 0) {
  if (g.n() == 0) throw EmptyGraphError("extract_expander on empty graph");
  if (g.m() == 0) throw EmptyGraphError("extract_expander on edgeless graph");

  Rat bar(static_cast<long long>(g.m()), static_cast<long long>(g.n()));  // d(G)/2

  VertexSet dens = densest_subgraph(g, DensestMethod::exact);
  Graph h = detail::peel_to_half_avg(g.induced(dens));

  auto safe_avg = [](const Graph& x) {
    return x.n() == 0 ? Rat(-1, 1) : x.avg_degree();
  };

  int max_rounds = std::max(1, static_cast<int>(std::ceil(2.0 * std::log2(std::max(2, g.n())))));
  int rounds = 0;
  double t = 0.0;
  for (; rounds < max_rounds; ++rounds) {
    double d = h.avg_degree().to_double();
    t = std::max(1e-6, eps2 * d * d);
    auto viol = find_violation(h, eps1, t, effort, Rng::derive(seed, 1000 + rounds));
    if (!viol) break;

    VertexSet xs(viol->x);
    VertexSet inside = xs.unioned(external_neighborhood(h, xs));
    Graph cand1 = detail::peel_to_half_avg(h.induced(inside));
    Graph cand2 = detail::peel_to_half_avg(h.induced(h.vertex_set().minus(xs)));
    Rat a1 = safe_avg(cand1), a2 = safe_avg(cand2);
    const Graph& chosen = (a2 > a1) ? cand2 : cand1;
    Rat best = (a2 > a1) ? a2 : a1;
    if (best < bar) break;
    if (chosen.n() == h.n()) break;  // no progress
    h = chosen;
  }

  ExtractResult res{std::move(h), t, false, rounds};
  if (res.t == 0.0) {
    double d = res.h.avg_degree().to_double();
    res.t = std::max(1e-6, eps2 * d * d);
  }
  if (res.h.n() <= 18)
    res.certified = !certify_exhaustive(res.h, eps1, res.t).has_value();
  return res;
}

}  // namespace tksub
