#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/connect.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/params.hpp"
#include "tksub/report.hpp"
#include "tksub/rng.hpp"

namespace tksub {

struct ReduceResult {
  std::optional<SubdivisionCertificate> cert;  // set when the high-degree route fired
  Graph reduced;                               // g minus the high-degree vertices otherwise
  int removed = 0;
};

namespace detail {

// Exact below 200 vertices, sampled pair probes above. Returns a witness
// description when evidence of a 4-cycle shows up, nothing otherwise.
inline std::optional<std::string> c4_evidence(const Graph& g, std::uint64_t seed) {
  if (g.n() <= 200) {
    if (auto cyc = has_short_cycle(g, {4})) {
      std::string s = "4-cycle";
      for (int v : *cyc) s += " " + std::to_string(v);
      return s;
    }
    return std::nullopt;
  }
  Rng rng(seed);
  std::vector<int> verts = g.vertices();
  for (int probe = 0; probe < 500; ++probe) {
    int u = verts[rng.index(verts.size())];
    int w = verts[rng.index(verts.size())];
    if (u == w) continue;
    int common = 0;
    const auto& nu = g.neighbors(u);
    for (int x : nu)
      if (x != w && g.has_edge(w, x) && ++common >= 2)
        return "sampled pair " + std::to_string(u) + "," + std::to_string(w) +
               " with two common neighbors";
  }
  return std::nullopt;
}

// Greedy star-of-stars around each chosen core: s1 from fresh neighbors,
// then per s1 vertex up to hd_cap fresh children until the s2 target.
inline std::vector<CorePlan> high_degree_plans(const Graph& g, const std::vector<int>& cores,
                                               const ResolvedParams& rp) {
  std::vector<char> taken(static_cast<std::size_t>(g.universe()), 0);
  for (int c : cores) taken[static_cast<std::size_t>(c)] = 1;
  std::vector<CorePlan> plans;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    CorePlan plan;
    plan.core = cores[i];
    for (int u : g.neighbors(plan.core)) {
      if (taken[static_cast<std::size_t>(u)]) continue;
      if (static_cast<double>(plan.s1.size()) >= rp.hd_s1) break;
      taken[static_cast<std::size_t>(u)] = 1;
      plan.s1.insert(u);
      plan.parent[u] = plan.core;
    }
    for (int u : plan.s1) {
      if (static_cast<double>(plan.s2.size()) >= rp.hd_s2) break;
      int picked = 0;
      for (int w : g.neighbors(u)) {
        if (taken[static_cast<std::size_t>(w)]) continue;
        if (picked >= rp.hd_cap || static_cast<double>(plan.s2.size()) >= rp.hd_s2) break;
        taken[static_cast<std::size_t>(w)] = 1;
        plan.s2.insert(w);
        plan.parent[w] = u;
        ++picked;
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace detail

// Embeds a subdivision directly on ell cores drawn from the given
// high-degree vertices (degree descending, ties to the low id). Throws
// EmbedFailedError when fewer than ceil(ell/2) cores survive connection.
inline SubdivisionCertificate embed_from_high_degree_cores(const Graph& g,
                                                           const std::vector<int>& high,
                                                           const ResolvedParams& rp,
                                                           RunReport* report = nullptr) {
  std::vector<int> order = high;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  if (static_cast<int>(order.size()) > rp.ell) order.resize(static_cast<std::size_t>(rp.ell));
  std::sort(order.begin(), order.end());

  std::vector<CorePlan> plans = detail::high_degree_plans(g, order, rp);
  int s1_min = plans.empty() ? 0 : g.n();
  for (const auto& p : plans) s1_min = std::min(s1_min, static_cast<int>(p.s1.size()));

  ConnectOutcome out = connect_cores(g, plans, 1, rp.delta_prime, rp.diam_budget);
  if (report) {
    StageNote note;
    note.stage = "high-degree-embed";
    note.lemma = "star-of-stars";
    note.params = {{"ell", rp.ell},
                   {"s1_target", rp.hd_s1},
                   {"s2_target", rp.hd_s2},
                   {"cap", rp.hd_cap},
                   {"bad_threshold", rp.delta_prime}};
    note.sizes = {{"cores", order.size()}, {"s1_min", s1_min}, {"survivors", out.survivors}};
    note.discards = {{"bad", out.bad_discards},
                     {"connection", out.fail_discards},
                     {"log", out.discard_log}};
    note.outcome = out.survivors * 2 >= rp.ell ? "ok" : "failed";
    report->add(note);
  }
  int needed = (rp.ell + 1) / 2;
  if (out.survivors < needed) {
    std::string reason = out.bad_discards >= out.fail_discards ? "too-many-bad" : "connection";
    throw EmbedFailedError(out.cert, reason,
                           "high-degree embed kept " + std::to_string(out.survivors) + " of " +
                               std::to_string(rp.ell) + " cores");
  }
  return out.cert;
}

// Either embeds straight away from vertices of degree >= delta (when at
// least ell of them exist) or strips them and returns the reduced graph,
// which should keep at least half the vertices and half the average degree.
inline ReduceResult reduce_max_degree(const Graph& g, const ResolvedParams& rp, std::uint64_t seed,
                                      RunReport* report = nullptr) {
  if (g.n() == 0) throw EmptyGraphError("reduce_max_degree: empty graph");

  if (auto ev = detail::c4_evidence(g, Rng::derive(seed, 11))) {
    if (report) {
      StageNote note;
      note.stage = "reduce-precondition";
      note.lemma = "square-free-check";
      note.outcome = "warning";
      note.params = {{"evidence", *ev}};
      report->add(note);
    }
  }

  std::vector<int> high;
  for (int v : g.vertices())
    if (static_cast<double>(g.degree(v)) >= rp.delta) high.push_back(v);

  if (static_cast<int>(high.size()) >= rp.ell) {
    ReduceResult res{std::nullopt, g, 0};
    res.cert = embed_from_high_degree_cores(g, high, rp, report);
    return res;
  }

  VertexSet keep = g.vertex_set().minus(VertexSet(high));
  if (keep.empty()) {  // everything is high degree yet fewer than ell: keep g
    high.clear();
    keep = g.vertex_set();
  }
  Graph reduced = g.induced(keep);
  bool kept_half = 2 * reduced.n() >= g.n();
  bool degree_half =
      Rat(2 * reduced.m(), std::max(1, reduced.n())) >= Rat(g.m(), std::max(1, g.n()));
  if (report) {
    StageNote note;
    note.stage = "reduce";
    note.lemma = "max-degree-strip";
    note.params = {{"delta", rp.delta}};
    note.sizes = {{"stripped", high.size()}, {"n", reduced.n()}, {"m", reduced.m()}};
    note.outcome = kept_half && degree_half ? "ok" : "warning";
    if (!kept_half) note.discards["lost_half_vertices"] = true;
    if (!degree_half) note.discards["lost_half_degree"] = true;
    report->add(note);
  }
  return ReduceResult{std::nullopt, std::move(reduced), static_cast<int>(high.size())};
}

}  // namespace tksub
