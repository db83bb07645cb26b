#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/dense.hpp"
#include "tksub/expander.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/hat.hpp"
#include "tksub/params.hpp"
#include "tksub/reduction.hpp"
#include "tksub/report.hpp"
#include "tksub/rng.hpp"
#include "tksub/tk_greedy.hpp"

namespace tksub {

struct SparsifyFailedError : GraphError {
  json attempts;
  SparsifyFailedError(json a, const std::string& what)
      : GraphError(what), attempts(std::move(a)) {}
};

struct SparseSplit {
  bool cert_route = false;
  SubdivisionCertificate cert;
  Graph gprime;
  VertexSet a, b, aprime;
};

// Splits off the huge-degree vertices B and inspects what their removal does
// to the rest. If at least half of A lost most of its degree, those vertices
// still send almost everything into B, so a degree-capped A''-to-B bipartite
// graph already carries a 1-subdivision and we finish through hats.
inline SparseSplit sparse_split(const Graph& g, const ResolvedParams& rp,
                                RunReport* report = nullptr) {
  if (g.n() == 0) throw EmptyGraphError("sparse_split: empty graph");
  SparseSplit out;
  for (int v : g.vertices()) {
    if (static_cast<double>(g.degree(v)) >= rp.deg_cut_B) out.b.insert(v);
    else out.a.insert(v);
  }
  if (out.a.empty()) {  // cut above the max degree: nothing qualifies as small
    out.a = g.vertex_set();
    out.b = VertexSet();
  }
  out.gprime = g.induced(out.a);
  long long m2 = g.m();  // v in A' iff deg_{G'}(v) >= d/10, i.e. 5 deg n >= m
  for (int v : out.gprime.vertices())
    if (5LL * out.gprime.degree(v) * g.n() >= m2) out.aprime.insert(v);
  VertexSet asecond = out.a.minus(out.aprime);

  bool case1 = 2 * asecond.size() >= out.a.size() && !out.b.empty();
  if (report) {
    StageNote note;
    note.stage = "sparse-split";
    note.lemma = "huge-degree-cut";
    note.params = {{"deg_cut", rp.deg_cut_B}};
    note.sizes = {{"a", out.a.size()},
                  {"b", out.b.size()},
                  {"a_kept_degree", out.aprime.size()},
                  {"a_lost_degree", asecond.size()}};
    note.outcome = case1 ? "hat-route" : "analysis-route";
    report->add(note);
  }
  if (case1) {
    int capd = std::max(1, static_cast<int>(std::floor(rp.d)));
    Graph capped = g.cap_degrees_toward(asecond, out.b, capd);
    out.cert = hat_subdivision(capped, asecond, out.b, 0, report);
    out.cert_route = true;
  }
  return out;
}

struct SparsifyOut {
  bool cert_route = false;
  SubdivisionCertificate cert;
  VertexSet u0, w0;
  Graph g3;
};

// Degree-cap U' toward W, then repeatedly sample W down and keep the U'
// vertices that see only a bounded piece of the sample, until the sampled
// pair is simultaneously still dense, still large, and genuinely smaller.
inline SparsifyOut sparse_sparsify(const Graph& gp, const VertexSet& uprime, const VertexSet& w,
                                   std::size_t u_total, int n_ref, const ResolvedParams& rp,
                                   std::uint64_t seed, RunReport* report = nullptr) {
  SparsifyOut out;
  int capd = std::max(1, static_cast<int>(std::floor(rp.d)));
  out.g3 = gp.cap_degrees_toward(uprime, w, capd);

  if (static_cast<double>(w.size()) * rp.d * rp.d < static_cast<double>(n_ref)) {
    if (report) {
      StageNote note;
      note.stage = "sparsify";
      note.lemma = "small-w-shortcut";
      note.sizes = {{"w", w.size()}, {"u", uprime.size()}};
      note.outcome = "hat-route";
      report->add(note);
    }
    out.cert = hat_subdivision(out.g3, uprime, w, 0, report);
    out.cert_route = true;
    return out;
  }

  json attempts = json::array();
  for (int attempt = 0; attempt < rp.retries; ++attempt) {
    Rng rng(Rng::derive(seed, 100 + static_cast<std::uint64_t>(attempt)));
    VertexSet w0;
    for (int x : w)
      if (rng.coin(rp.p_sample)) w0.insert(x);
    VertexSet u0;
    long long e0 = 0;
    for (int v : uprime) {
      int cnt = 0;
      for (int y : out.g3.neighbors(v))
        if (w0.contains(y)) ++cnt;
      if (cnt <= rp.Kcap) {
        u0.insert(v);
        e0 += cnt;
      }
    }
    bool dense_enough = static_cast<double>(e0) >= rp.Cprime * static_cast<double>(u0.size());
    bool large_enough = !u0.empty() && 6 * u0.size() >= u_total;
    bool small_enough =
        static_cast<double>(w0.size()) * rp.d <= 2.0 * rp.Ccap * static_cast<double>(w.size());
    attempts.push_back(json{{"attempt", attempt},
                            {"w0", w0.size()},
                            {"u0", u0.size()},
                            {"edges", e0},
                            {"dense", dense_enough},
                            {"large", large_enough},
                            {"small", small_enough}});
    if (dense_enough && large_enough && small_enough) {
      if (report) {
        StageNote note;
        note.stage = "sparsify";
        note.lemma = "sample-and-verify";
        note.params = {{"p", rp.p_sample}, {"K", rp.Kcap}, {"Cprime", rp.Cprime}};
        note.sizes = {{"w0", w0.size()}, {"u0", u0.size()}, {"edges", e0}};
        note.discards = {{"attempts", attempts}};
        note.outcome = "ok";
        report->add(note);
      }
      out.u0 = std::move(u0);
      out.w0 = std::move(w0);
      return out;
    }
  }
  if (report) {
    StageNote note;
    note.stage = "sparsify";
    note.lemma = "sample-and-verify";
    note.discards = {{"attempts", attempts}};
    note.outcome = "failed";
    report->add(note);
  }
  throw SparsifyFailedError(attempts, "no sampled subpair passed verification after " +
                                          std::to_string(rp.retries) + " attempts");
}

namespace detail {

// Sampled check that sets up to min-degree^2/500 expand by a factor of two.
inline void doubling_spot_check(const Graph& g, std::uint64_t seed, RunReport* report) {
  int cap = static_cast<int>(std::floor(static_cast<double>(g.min_degree()) *
                                        static_cast<double>(g.min_degree()) / 500.0));
  int trials = 0, failures = 0;
  if (cap >= 1 && g.n() > 0) {
    std::vector<int> verts = g.vertices();
    for (int tr = 0; tr < 20; ++tr) {
      Rng rng(Rng::derive(seed, 300 + static_cast<std::uint64_t>(tr)));
      VertexSet xs;
      int v = verts[rng.index(verts.size())];
      xs.insert(v);
      int want = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(cap)));
      while (static_cast<int>(xs.size()) < want) {
        VertexSet ext = external_neighborhood(g, xs);
        if (ext.empty()) break;
        xs.insert(ext.ids()[rng.index(ext.size())]);
      }
      ++trials;
      if (external_neighborhood(g, xs).size() < 2 * xs.size()) ++failures;
    }
  }
  if (report) {
    StageNote note;
    note.stage = "doubling-check";
    note.lemma = "small-set-doubling";
    note.sizes = {{"cap", cap}, {"trials", trials}, {"failures", failures}};
    note.outcome = failures == 0 ? "ok" : "warning";
    report->add(note);
  }
}

}  // namespace detail

// The sparse half of the engine. Entered with the expander g (already
// reduced); rp was resolved on g.
inline SubdivisionCertificate sparse_pipeline(const Graph& g, const ParamSet& ps,
                                              const ResolvedParams& rp, std::uint64_t seed,
                                              RunReport* report = nullptr) {
  SparseSplit split = sparse_split(g, rp, report);
  if (split.cert_route) return split.cert;

  const Graph& gp = split.gprime;
  if (gp.n() == 0 || gp.m() == 0) {
    if (report) {
      StageNote note;
      note.stage = "sparse-analysis";
      note.lemma = "degenerate-remainder";
      note.outcome = "warning";
      report->add(note);
    }
    return generic_tk(g);
  }

  VertexSet w;
  for (int v : gp.vertices())
    if (static_cast<double>(gp.degree(v)) >= rp.w_cut) w.insert(v);
  VertexSet u = gp.vertex_set().minus(w);
  VertexSet au = split.aprime.intersect(u);
  VertexSet u1;  // still sends a d/20 share into W
  for (int v : au) {
    int cnt = 0;
    for (int y : gp.neighbors(v))
      if (w.contains(y)) ++cnt;
    if (20.0 * cnt >= rp.d) u1.insert(v);
  }
  VertexSet u2 = au.minus(u1);

  bool case1 = 5 * u2.size() >= u.size();
  bool case2 = 5 * u1.size() >= u.size();
  bool forced = false;
  if (!case1 && !case2) {  // neither side is a fifth: take the larger one
    forced = true;
    case1 = u2.size() >= u1.size();
    case2 = !case1;
  }
  if (report) {
    StageNote note;
    note.stage = "sparse-analysis";
    note.lemma = "buffer-split";
    note.params = {{"w_cut", rp.w_cut}};
    note.sizes = {{"w", w.size()}, {"u", u.size()}, {"u_into_w", u1.size()},
                  {"u_off_w", u2.size()}};
    note.outcome = forced ? "warning" : (case1 ? "expander-route" : "sample-route");
    report->add(note);
  }

  if (case1) {
    if (u.empty()) return generic_tk(gp);
    Graph gu = gp.induced(u);
    if (gu.m() == 0) return generic_tk(gp);
    ExtractResult ex = extract_expander(gu, ps.eps1, ps.eps2, ps.retries, Rng::derive(seed, 71));
    const Graph& g1 = ex.h;
    double d1 = g1.n() > 0 ? 2.0 * g1.m() / g1.n() : 0.0;
    detail::doubling_spot_check(g1, Rng::derive(seed, 73), report);
    double threshold =
        std::exp(std::pow(std::log(static_cast<double>(std::max(2, g1.n()))), 1.0 / 8.0));
    if (report) {
      StageNote note;
      note.stage = "sparse-expander";
      note.lemma = "inner-expander";
      note.sizes = {{"n", g1.n()}, {"m", g1.m()}, {"certified", ex.certified}};
      note.params = {{"d", d1}, {"threshold", threshold}};
      note.outcome = d1 >= threshold ? "dense-recursion" : "greedy-route";
      report->add(note);
    }
    if (d1 >= threshold && g1.m() > 0) {
      try {
        ResolvedParams rp1 = ps.resolve(g1.n(), g1.avg_degree());
        ReduceResult red = reduce_max_degree(g1, rp1, Rng::derive(seed, 72), report);
        if (red.cert) return *red.cert;
        if (red.reduced.m() == 0) return generic_tk(g1);
        ResolvedParams rp2 = ps.resolve(red.reduced.n(), red.reduced.avg_degree());
        return dense_embed(red.reduced, rp2, Rng::derive(seed, 74), report);
      } catch (const EmbedFailedError& e) {
        SubdivisionCertificate alt = generic_tk(g1);
        if (report) {
          StageNote note;
          note.stage = "dense-recursion";
          note.lemma = "greedy-fallback";
          note.params = {{"reason", e.reason}};
          note.sizes = {{"partial_ell", e.partial.ell()}, {"greedy_ell", alt.ell()}};
          note.outcome = "fallback";
          report->add(note);
        }
        return e.partial.ell() > alt.ell() ? e.partial : alt;
      } catch (const StageFailedError& e) {
        SubdivisionCertificate alt = generic_tk(g1);
        if (report) {
          StageNote note;
          note.stage = "dense-recursion";
          note.lemma = "greedy-fallback";
          note.params = {{"constraint", e.constraint}, {"core_index", e.core_index}};
          note.sizes = {{"greedy_ell", alt.ell()}};
          note.outcome = "fallback";
          report->add(note);
        }
        return alt;
      }
    }
    return generic_tk(g1);
  }

  if (u1.empty() || w.empty()) {
    if (report) {
      StageNote note;
      note.stage = "sparse-analysis";
      note.lemma = "empty-sample-side";
      note.outcome = "warning";
      report->add(note);
    }
    return generic_tk(gp);
  }
  SparsifyOut sp = sparse_sparsify(gp, u1, w, u.size(), g.n(), rp, seed, report);
  if (sp.cert_route) return sp.cert;
  return hat_subdivision(sp.g3, sp.u0, sp.w0, 0, report);
}

}  // namespace tksub
