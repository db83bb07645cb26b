#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/connect.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/params.hpp"
#include "tksub/reduction.hpp"
#include "tksub/report.hpp"

namespace tksub {

struct StageFailedError : GraphError {
  int core_index;
  std::string constraint;
  StageFailedError(int idx, std::string c, const std::string& what)
      : GraphError(what), core_index(idx), constraint(std::move(c)) {}
};

namespace detail {

inline bool two_colorable(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.universe()), -1);
  for (int s : g.vertices()) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        if (color[static_cast<std::size_t>(w)] == -1) {
          color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
          stack.push_back(w);
        } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

// First shells around ell cores. Core i is picked greedily: exclude every
// earlier core's closed first shell plus the raw second shells of its own
// block, peel what is left down to min degree d/4, and take the max-degree
// vertex (ties to the low id). Its s1 neighbors become the first shell and
// each of those contributes up to cap_s2 fresh children to the raw second
// shell. After every core is placed, the raw second shells are trimmed
// globally: first-shell members and cores drop out, any child adjacent to a
// non-parent first-shell member drops out (evidence of a 4-cycle), and each
// first-shell vertex keeps at most max(cap_s2, floor(d/4)) children.
inline std::vector<CorePlan> dense_stage1(const Graph& g, const ResolvedParams& rp,
                                          RunReport* report = nullptr) {
  if (g.n() == 0 || g.m() == 0) throw EmptyGraphError("dense_stage1: graph has no edges");
  const Rat d_quarter(g.m(), 2 * g.n());
  const double d = 2.0 * g.m() / g.n();
  int c4_trims = 0, cap_trims = 0;

  std::vector<CorePlan> plans;
  std::vector<VertexSet> s2raw;
  for (int i = 0; i < rp.ell; ++i) {
    int block_id = i / std::max(1, rp.block);
    VertexSet excl;
    for (int j = 0; j < i; ++j) {
      excl = excl.unioned(plans[static_cast<std::size_t>(j)].s1);
      excl.insert(plans[static_cast<std::size_t>(j)].core);
      if (j / std::max(1, rp.block) == block_id)
        excl = excl.unioned(s2raw[static_cast<std::size_t>(j)]);
    }
    VertexSet pool = g.vertex_set().minus(excl);
    if (pool.empty())
      throw StageFailedError(i, "pool-empty", "no vertices left for core " + std::to_string(i));
    Graph sub = peel_min_degree(g.induced(pool), d_quarter);
    if (sub.n() == 0)
      throw StageFailedError(i, "pool-empty",
                             "peeling emptied the pool for core " + std::to_string(i));

    int core = -1, best = -1;
    for (int v : sub.vertices())
      if (sub.degree(v) > best) {
        best = sub.degree(v);
        core = v;
      }
    if (best < rp.s1)
      throw StageFailedError(i, "core-degree",
                             "max degree " + std::to_string(best) + " below first shell size " +
                                 std::to_string(rp.s1));

    CorePlan plan;
    plan.core = core;
    plan.block = block_id;
    for (int u : sub.neighbors(core)) {
      if (static_cast<int>(plan.s1.size()) >= rp.s1) break;
      plan.s1.insert(u);
      plan.parent[u] = core;
    }
    VertexSet raw;
    for (int u : plan.s1) {
      int picked = 0;
      for (int w : sub.neighbors(u)) {
        if (picked >= rp.cap_s2) break;
        if (w == core || plan.s1.contains(w)) continue;
        if (raw.contains(w)) {
          ++c4_trims;  // second parent for the same child: a 4-cycle closes
          continue;
        }
        raw.insert(w);
        plan.parent[w] = u;
        ++picked;
      }
    }
    s2raw.push_back(std::move(raw));
    plans.push_back(std::move(plan));
  }

  VertexSet protected_zone;
  for (const auto& p : plans) {
    protected_zone = protected_zone.unioned(p.s1);
    protected_zone.insert(p.core);
  }
  const int bound_iii = std::max(rp.cap_s2, static_cast<int>(std::floor(d / 4.0)));
  for (std::size_t i = 0; i < plans.size(); ++i) {
    CorePlan& plan = plans[i];
    std::map<int, int> load;
    for (int w : s2raw[i]) {
      if (static_cast<int>(plan.s2.size()) >= rp.s2) break;
      if (protected_zone.contains(w)) continue;
      bool foreign_parent = false;
      for (int u : plan.s1)
        if (u != plan.parent.at(w) && g.has_edge(u, w)) {
          foreign_parent = true;  // 4-cycle through core, two shell vertices, w
          break;
        }
      if (foreign_parent) {
        ++c4_trims;
        continue;
      }
      if (load[plan.parent.at(w)] >= bound_iii) {
        ++cap_trims;
        continue;
      }
      ++load[plan.parent.at(w)];
      plan.s2.insert(w);
    }
    for (int w : s2raw[i])
      if (!plan.s2.contains(w)) plan.parent.erase(w);
    if (static_cast<int>(plan.s2.size()) < rp.s2)
      throw StageFailedError(static_cast<int>(i), "s2-short",
                             "second shell of core " + std::to_string(plan.core) + " has " +
                                 std::to_string(plan.s2.size()) + " of " + std::to_string(rp.s2));
  }

  // re-verify what the construction promises
  {
    VertexSet seen;
    for (std::size_t i = 0; i < plans.size(); ++i) {
      for (int u : plans[i].s1)
        if (seen.contains(u))
          throw StageFailedError(static_cast<int>(i), "first-shells-overlap",
                                 "vertex " + std::to_string(u) + " sits in two first shells");
      seen = seen.unioned(plans[i].s1);
    }
    std::map<int, VertexSet> block_b2;
    for (std::size_t i = 0; i < plans.size(); ++i) {
      VertexSet b2 = plans[i].s1.unioned(plans[i].s2);
      b2.insert(plans[i].core);
      for (std::size_t j = 0; j < plans.size(); ++j)
        if (j != i && b2.contains(plans[j].core))
          throw StageFailedError(static_cast<int>(i), "core-captured",
                                 "core " + std::to_string(plans[j].core) +
                                     " inside another ball");
      VertexSet& acc = block_b2[plans[i].block];
      if (!acc.intersect(b2).empty())
        throw StageFailedError(static_cast<int>(i), "block-balls-overlap",
                               "radius-2 balls overlap inside a block");
      acc = acc.unioned(b2);
    }
  }

  if (report) {
    StageNote note;
    note.stage = "dense-shells";
    note.lemma = "disjoint-ball-greedy";
    note.params = {{"ell", rp.ell}, {"s1", rp.s1},     {"s2", rp.s2},
                   {"cap", rp.cap_s2}, {"block", rp.block}, {"bound_iii", bound_iii}};
    note.sizes = json::object();
    note.sizes["cores"] = plans.size();
    note.discards = {{"c4_trims", c4_trims}, {"cap_trims", cap_trims}};
    note.outcome = "ok";
    report->add(note);
  }
  return plans;
}

// Third shells: each second-shell vertex adopts up to cap_s3 fresh children
// outside its own ball; a child reached from two second-shell parents closes
// a 6-cycle and is kept only once. Children inside anyone's closed first
// shell are removed, and the result is trimmed to s3 per core.
inline void dense_stage2(const Graph& g, std::vector<CorePlan>& plans, const ResolvedParams& rp,
                         RunReport* report = nullptr) {
  VertexSet protected_zone;
  for (const auto& p : plans) {
    protected_zone = protected_zone.unioned(p.s1);
    protected_zone.insert(p.core);
  }
  int c6_trims = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    CorePlan& plan = plans[i];
    VertexSet raw;
    std::map<int, int> par;
    for (int w : plan.s2) {
      int picked = 0;
      for (int x : g.neighbors(w)) {
        if (picked >= rp.cap_s3) break;
        if (x == plan.core || plan.s1.contains(x) || plan.s2.contains(x)) continue;
        if (raw.contains(x)) {
          ++c6_trims;  // two tree paths of length 3 meet: a 6-cycle closes
          continue;
        }
        raw.insert(x);
        par[x] = w;
        ++picked;
      }
    }
    for (int x : raw) {
      if (static_cast<int>(plan.s3.size()) >= rp.s3) break;
      if (protected_zone.contains(x)) continue;
      plan.s3.insert(x);
      plan.parent[x] = par.at(x);
    }
    if (static_cast<int>(plan.s3.size()) < rp.s3)
      throw StageFailedError(static_cast<int>(i), "s3-short",
                             "third shell of core " + std::to_string(plan.core) + " has " +
                                 std::to_string(plan.s3.size()) + " of " + std::to_string(rp.s3));
  }
  if (report) {
    StageNote note;
    note.stage = "dense-third-shell";
    note.lemma = "tree-extension";
    note.params = {{"cap", rp.cap_s3}, {"s3", rp.s3}};
    note.discards = {{"c6_trims", c6_trims}};
    note.outcome = "ok";
    report->add(note);
  }
}

// Connect all pairs through the shells; cores whose second shell gets eaten
// beyond delta'' are dropped, as is the weaker core of any unconnectable
// pair. Success needs ceil(ell/2) survivors.
inline SubdivisionCertificate dense_connect(const Graph& g, std::vector<CorePlan>& plans,
                                            const ResolvedParams& rp,
                                            RunReport* report = nullptr) {
  int ell0 = static_cast<int>(plans.size());
  ConnectOutcome out = connect_cores(g, plans, 2, rp.delta_dprime, rp.diam_budget);
  if (report) {
    StageNote note;
    note.stage = "dense-connect";
    note.lemma = "ball-to-ball-paths";
    note.params = {{"budget", rp.diam_budget}, {"bad_threshold", rp.delta_dprime}};
    note.sizes = {{"cores", ell0}, {"survivors", out.survivors}};
    note.discards = {{"bad", out.bad_discards},
                     {"connection", out.fail_discards},
                     {"log", out.discard_log}};
    note.outcome = 2 * out.survivors >= ell0 ? "ok" : "failed";
    report->add(note);
  }
  if (2 * out.survivors < ell0) {
    std::string reason = out.bad_discards >= out.fail_discards ? "too-many-bad" : "connection";
    throw EmbedFailedError(out.cert, reason,
                           "dense connect kept " + std::to_string(out.survivors) + " of " +
                               std::to_string(ell0) + " cores");
  }
  return out.cert;
}

// Full dense-case run. Preconditions (bipartite, no short even cycles,
// min degree d/4) are checked and reported as warnings, not errors.
inline SubdivisionCertificate dense_embed(const Graph& g, const ResolvedParams& rp,
                                          std::uint64_t seed, RunReport* report = nullptr) {
  if (report) {
    json issues = json::array();
    if (!detail::two_colorable(g)) issues.push_back("odd cycle present");
    if (auto ev = detail::c4_evidence(g, Rng::derive(seed, 13))) issues.push_back(*ev);
    if (g.n() <= 200)
      if (auto cyc = has_short_cycle(g, {6})) issues.push_back("6-cycle present");
    if (2 * static_cast<long long>(g.min_degree()) * g.n() < g.m())
      issues.push_back("min degree below a quarter of the average");
    if (!issues.empty()) {
      StageNote note;
      note.stage = "dense-precondition";
      note.lemma = "host-shape-check";
      note.params = {{"issues", issues}};
      note.outcome = "warning";
      report->add(note);
    }
  }
  std::vector<CorePlan> plans = dense_stage1(g, rp, report);
  dense_stage2(g, plans, rp, report);
  return dense_connect(g, plans, rp, report);
}

}  // namespace tksub
