#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tksub/fields.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/rng.hpp"

namespace tksub {

struct GeneratorError : GraphError {
  explicit GeneratorError(const std::string& what) : GraphError(what) {}
};
struct NotC6FreeError : GeneratorError {
  explicit NotC6FreeError(const std::string& what) : GeneratorError(what) {}
};

namespace detail {

// Canonical representatives of projective points over GF(q)^dim: first
// nonzero coordinate scaled to 1, enumerated in lexicographic order of the
// coordinate vector, which fixes the vertex numbering.
inline std::vector<std::vector<int>> projective_points(const FiniteField& f, int dim) {
  std::vector<std::vector<int>> pts;
  std::vector<int> coords(static_cast<std::size_t>(dim), 0);
  // lead position from high index to low: representative has coords[i]=0 for
  // i<lead, coords[lead]=1, free coords above.
  for (int lead = 0; lead < dim; ++lead) {
    std::vector<int> c(static_cast<std::size_t>(dim), 0);
    c[static_cast<std::size_t>(lead)] = 1;
    int free = dim - lead - 1;
    long long count = 1;
    for (int i = 0; i < free; ++i) count *= f.q();
    for (long long it = 0; it < count; ++it) {
      long long rem = it;
      for (int i = 0; i < free; ++i) {
        c[static_cast<std::size_t>(lead + 1 + i)] = static_cast<int>(rem % f.q());
        rem /= f.q();
      }
      pts.push_back(c);
    }
  }
  // lexicographic ordering of full coordinate vectors
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline int dot3(const FiniteField& f, const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
  return s;
}

// Symplectic form x0*y1 - x1*y0 + x2*y3 - x3*y2.
inline int symplectic4(const FiniteField& f, const std::vector<int>& x, const std::vector<int>& y) {
  int t1 = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
  int t2 = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
  return f.add(t1, t2);
}

inline std::vector<int> canonical_point(const FiniteField& f, std::vector<int> c) {
  int lead = -1;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) {
      lead = static_cast<int>(i);
      break;
    }
  if (lead < 0) throw GeneratorError("zero vector has no projective class");
  int scale = f.inv(c[static_cast<std::size_t>(lead)]);
  for (auto& x : c) x = f.mul(x, scale);
  return c;
}

}  // namespace detail

// Polarity graph of the projective plane PG(2,q): vertices are points,
// u ~ v iff u . v = 0 and u != v. n = q^2+q+1, e = q(q+1)^2/2; the q+1
// absolute points (u . u = 0) have degree q, the rest degree q+1. C4-free.
inline Graph polarity_graph(int q) {
  FiniteField f = FiniteField::make(q);
  if (q > 32) throw GeneratorError("polarity_graph: q > 32 not supported");
  auto pts = detail::projective_points(f, 3);
  int n = static_cast<int>(pts.size());
  if (n != q * q + q + 1) throw GeneratorError("polarity_graph: point count mismatch");
  Graph::Builder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::dot3(f, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) == 0)
        b.add_edge(i, j);
  Graph g = b.build();
  long long want = static_cast<long long>(q) * (q + 1) * (q + 1) / 2;
  if (static_cast<long long>(g.m()) != want)
    throw GeneratorError("polarity_graph: edge count mismatch");
  return g;
}

// Point-line incidence graph of PG(2,q). Points get ids 0..N-1 (side A),
// lines N..2N-1 (side B), N = q^2+q+1. (q+1)-regular, girth 6.
inline Graph projective_incidence(int q) {
  FiniteField f = FiniteField::make(q);
  if (q > 32) throw GeneratorError("projective_incidence: q > 32 not supported");
  auto pts = detail::projective_points(f, 3);
  int n1 = static_cast<int>(pts.size());
  Graph::Builder b(2 * n1);
  std::vector<Side> sides(static_cast<std::size_t>(2 * n1), Side::A);
  for (int l = 0; l < n1; ++l) sides[static_cast<std::size_t>(n1 + l)] = Side::B;
  for (int p = 0; p < n1; ++p)
    for (int l = 0; l < n1; ++l)
      if (detail::dot3(f, pts[static_cast<std::size_t>(p)], pts[static_cast<std::size_t>(l)]) == 0)
        b.add_edge(p, n1 + l);
  b.set_sides(std::move(sides));
  Graph g = b.build();
  if (static_cast<long long>(g.m()) != static_cast<long long>(n1) * (q + 1))
    throw GeneratorError("projective_incidence: edge count mismatch");
  return g;
}

// Point-line incidence graph of the symplectic generalized quadrangle W(q):
// points are the points of PG(3,q), lines the totally isotropic lines of the
// symplectic form. Both sides have (q+1)(q^2+1) vertices, the graph is
// (q+1)-regular with girth 8. q <= 9 (sizes grow fast).
inline Graph gq_incidence(int q) {
  if (q > 9) throw GeneratorError("gq_incidence: q > 9 not supported (size guard)");
  FiniteField f = FiniteField::make(q);
  auto pts = detail::projective_points(f, 4);
  int np = static_cast<int>(pts.size());
  if (np != (q + 1) * (q * q + 1)) throw GeneratorError("gq_incidence: point count mismatch");
  std::map<std::vector<int>, int> point_id;
  for (int i = 0; i < np; ++i) point_id[pts[static_cast<std::size_t>(i)]] = i;

  // Collect totally isotropic lines as sorted point-id tuples.
  std::map<std::vector<int>, int> line_id;
  std::vector<std::vector<int>> lines;
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      if (detail::symplectic4(f, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) != 0)
        continue;
      // the projective line spanned by i and j: j itself plus p_i + lam p_j
      std::vector<int> members{j};
      for (int lam = 0; lam < f.q(); ++lam) {
        std::vector<int> c(4);
        for (int k = 0; k < 4; ++k)
          c[static_cast<std::size_t>(k)] =
              f.add(pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                    f.mul(lam, pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
        members.push_back(point_id.at(detail::canonical_point(f, c)));
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (static_cast<int>(members.size()) != q + 1)
        throw GeneratorError("gq_incidence: isotropic line has wrong size");
      if (!line_id.count(members)) {
        line_id[members] = static_cast<int>(lines.size());
        lines.push_back(members);
      }
    }
  }
  int nl = static_cast<int>(lines.size());
  if (nl != (q + 1) * (q * q + 1)) throw GeneratorError("gq_incidence: line count mismatch");

  Graph::Builder b(np + nl);
  std::vector<Side> sides(static_cast<std::size_t>(np + nl), Side::A);
  for (int l = 0; l < nl; ++l) sides[static_cast<std::size_t>(np + l)] = Side::B;
  for (int l = 0; l < nl; ++l)
    for (int p : lines[static_cast<std::size_t>(l)]) b.add_edge(p, np + l);
  b.set_sides(std::move(sides));
  return b.build();
}

// `copies` disjoint copies of K_{d,d}. Copy c occupies ids [2dc, 2d(c+1)):
// first d on side A, next d on side B.
inline Graph disjoint_kdd(int d, int copies) {
  if (d < 1 || copies < 1) throw GeneratorError("disjoint_kdd: d and copies must be positive");
  int n = 2 * d * copies;
  Graph::Builder b(n);
  std::vector<Side> sides(static_cast<std::size_t>(n), Side::A);
  for (int c = 0; c < copies; ++c) {
    int base = 2 * d * c;
    for (int i = 0; i < d; ++i) sides[static_cast<std::size_t>(base + d + i)] = Side::B;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b.add_edge(base + i, base + d + j);
  }
  b.set_sides(std::move(sides));
  return b.build();
}

// Seeded G(na, nb, p) bipartite random graph. Side A ids 0..na-1, side B ids
// na..na+nb-1. Pair order is fixed (a ascending, then b ascending), so the
// same seed always gives the same graph.
inline Graph random_bipartite(int na, int nb, double p, std::uint64_t seed) {
  if (na < 1 || nb < 1) throw GeneratorError("random_bipartite: sides must be nonempty");
  if (p < 0.0 || p > 1.0) throw GeneratorError("random_bipartite: p outside [0,1]");
  Rng rng(seed);
  Graph::Builder b(na + nb);
  std::vector<Side> sides(static_cast<std::size_t>(na + nb), Side::A);
  for (int j = 0; j < nb; ++j) sides[static_cast<std::size_t>(na + j)] = Side::B;
  for (int a = 0; a < na; ++a)
    for (int j = 0; j < nb; ++j)
      if (rng.coin(p)) b.add_edge(a, na + j);
  b.set_sides(std::move(sides));
  return b.build();
}

// C4-free spanning subgraph of a C6-free bipartite graph: repeatedly delete
// the edge lying on the most 4-cycles (ties: lexicographically smallest
// endpoint pair). How many edges survive is measured by the caller, never
// assumed.
inline Graph gyori_extract(const Graph& g) {
  if (g.n() == 0) throw EmptyGraphError("gyori_extract on empty graph");
  // 2-color if unlabeled; reject odd cycles.
  std::vector<Side> lab(static_cast<std::size_t>(g.universe()), Side::A);
  if (g.has_sides()) {
    for (int v : g.vertices()) lab[static_cast<std::size_t>(v)] = g.side(v);
  } else {
    std::vector<int> color(static_cast<std::size_t>(g.universe()), -1);
    for (int root : g.vertices()) {
      if (color[static_cast<std::size_t>(root)] >= 0) continue;
      color[static_cast<std::size_t>(root)] = 0;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
          if (color[static_cast<std::size_t>(w)] < 0) {
            color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
            stack.push_back(w);
          } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
            throw NotBipartiteError("gyori_extract: input has an odd cycle");
          }
        }
      }
    }
    for (int v : g.vertices())
      lab[static_cast<std::size_t>(v)] = color[static_cast<std::size_t>(v)] == 1 ? Side::B : Side::A;
  }
  if (auto c6 = has_short_cycle(g, {6}))
    throw NotC6FreeError("gyori_extract: input contains a 6-cycle through vertex " +
                         std::to_string((*c6)[0]));

  // Mutable adjacency copy; loop until no 4-cycle remains.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.universe()));
  for (int v : g.vertices()) adj[static_cast<std::size_t>(v)] = g.neighbors(v);

  auto remove_edge = [&](int u, int v) {
    auto& nu = adj[static_cast<std::size_t>(u)];
    nu.erase(std::find(nu.begin(), nu.end(), v));
    auto& nv = adj[static_cast<std::size_t>(v)];
    nv.erase(std::find(nv.begin(), nv.end(), u));
  };

  for (;;) {
    // Count, per edge, the number of 4-cycles through it. A 4-cycle is a
    // same-side pair u<u2 with >= 2 common neighbors.
    std::map<std::pair<int, int>, long long> edge_count;
    bool any = false;
    std::vector<int> commons;
    for (int u : g.vertices()) {
      if (lab[static_cast<std::size_t>(u)] != Side::A) continue;
      std::map<int, std::vector<int>> common_by_mate;  // u2 -> common neighbors
      for (int x : adj[static_cast<std::size_t>(u)])
        for (int u2 : adj[static_cast<std::size_t>(x)])
          if (u2 > u && lab[static_cast<std::size_t>(u2)] == Side::A)
            common_by_mate[u2].push_back(x);
      for (auto& [u2, xs] : common_by_mate) {
        long long k = static_cast<long long>(xs.size());
        if (k < 2) continue;
        any = true;
        for (int x : xs) {
          edge_count[{std::min(u, x), std::max(u, x)}] += k - 1;
          edge_count[{std::min(u2, x), std::max(u2, x)}] += k - 1;
        }
      }
    }
    if (!any) break;
    std::pair<int, int> best{-1, -1};
    long long best_count = -1;
    for (auto& [e, c] : edge_count) {
      if (c > best_count || (c == best_count && e < best)) {
        best = e;
        best_count = c;
      }
    }
    remove_edge(best.first, best.second);
  }

  Graph::Builder b(g.universe());
  std::vector<Side> sides(static_cast<std::size_t>(g.universe()), Side::A);
  for (int v = 0; v < g.universe(); ++v)
    sides[static_cast<std::size_t>(v)] = lab[static_cast<std::size_t>(v)];
  for (int v : g.vertices())
    for (int w : adj[static_cast<std::size_t>(v)])
      if (v < w) b.add_edge(v, w);
  b.set_sides(std::move(sides));
  Graph out = b.build();
  if (has_short_cycle(out, {4}))
    throw GraphError("gyori_extract: 4-cycle survived (internal error)");
  // keep original presence pattern
  return out.induced(g.vertex_set());
}

}  // namespace tksub
