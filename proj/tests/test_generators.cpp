#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tksub/fields.hpp"
#include "tksub/generators.hpp"
#include "tksub/graph_io.hpp"
#include "tksub/graph_ops.hpp"

using namespace tksub;

TEST_CASE("finite field axioms hold for every supported small order") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    FiniteField f = FiniteField::make(q);
    INFO("q = " << q);
    CHECK(f.q() == q);
    CHECK(f.verify_axioms());
  }
  CHECK_THROWS_AS(FiniteField::make(6), BadFieldError);
  CHECK_THROWS_AS(FiniteField::make(12), BadFieldError);
}

TEST_CASE("projective incidence graph has the right shape") {
  for (int q : {2, 3, 4}) {
    Graph g = projective_incidence(q);
    int pts = q * q + q + 1;
    INFO("q = " << q);
    CHECK(g.n() == 2 * pts);
    CHECK(g.m() == pts * (q + 1));
    CHECK(g.has_sides());
    for (int v : g.vertices()) CHECK(g.degree(v) == q + 1);
    CHECK_FALSE(has_short_cycle(g, {4}).has_value());
    // girth is exactly six
    CHECK(has_short_cycle(g, {6}).has_value());
  }
}

TEST_CASE("polarity graph has q+1 absolute points and no squares") {
  for (int q : {2, 3, 5, 7, 11}) {
    Graph g = polarity_graph(q);
    INFO("q = " << q);
    CHECK(g.n() == q * q + q + 1);
    // absolute points lose their self-loop, everyone else is (q+1)-regular
    int low = 0;
    for (int v : g.vertices()) {
      CHECK((g.degree(v) == q || g.degree(v) == q + 1));
      if (g.degree(v) == q) ++low;
    }
    CHECK(low == q + 1);
    CHECK(2 * g.m() == (q + 1) * g.n() - (q + 1));
    CHECK_FALSE(has_short_cycle(g, {4}).has_value());
  }
}

TEST_CASE("generalized quadrangle incidence graph has girth eight") {
  for (int q : {2, 3}) {
    Graph g = gq_incidence(q);
    int pts = (q * q + 1) * (q + 1);
    INFO("q = " << q);
    CHECK(g.n() == 2 * pts);
    for (int v : g.vertices()) CHECK(g.degree(v) == q + 1);
    CHECK_FALSE(has_short_cycle(g, {4, 6}).has_value());
    CHECK(has_short_cycle(g, {8}).has_value());
  }
}

TEST_CASE("disjoint complete bipartite blocks") {
  Graph g = disjoint_kdd(3, 4);
  CHECK(g.n() == 24);
  CHECK(g.m() == 4 * 9);
  CHECK(g.has_sides());
  // no edges between copies
  Graph one = g.induced(VertexSet({0, 1, 2, 3, 4, 5}));
  CHECK(one.m() == 9);
}

TEST_CASE("random bipartite generator is seeded and two sided") {
  Graph a = random_bipartite(10, 12, 0.3, 5);
  Graph b = random_bipartite(10, 12, 0.3, 5);
  Graph c = random_bipartite(10, 12, 0.3, 6);
  CHECK(edge_list_string(a) == edge_list_string(b));
  CHECK(edge_list_string(a) != edge_list_string(c));
  CHECK(a.n() == 22);
  CHECK(a.has_sides());
  for (int v : a.vertices())
    for (int w : a.neighbors(v)) CHECK(a.side(v) != a.side(w));
}

TEST_CASE("hexagon-free square cleanup rejects hosts with hexagons") {
  CHECK_THROWS_AS(gyori_extract(projective_incidence(2)), NotC6FreeError);
}

TEST_CASE("hexagon-free square cleanup removes few edges and all squares") {
  // K_{2,2} is one four-cycle and no six-cycle: one edge must go.
  Graph k22 = disjoint_kdd(2, 1);
  Graph r = gyori_extract(k22);
  CHECK(r.m() == 3);
  CHECK_FALSE(has_short_cycle(r, {4}).has_value());

  // girth-8 incidence graphs with a couple of chords stay mostly intact
  Graph g = gq_incidence(2);
  Graph r2 = gyori_extract(g);
  CHECK(r2.m() == g.m());  // already square-free: nothing to delete

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph h = random_bipartite(8, 8, 0.35, 40 + seed);
    if (has_short_cycle(h, {6}).has_value()) continue;
    Graph out = gyori_extract(h);
    CHECK_FALSE(has_short_cycle(out, {4}).has_value());
    CHECK(out.m() <= h.m());
  }
}
