#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/dense.hpp"
#include "tksub/drc.hpp"
#include "tksub/expander.hpp"
#include "tksub/generators.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/hat.hpp"
#include "tksub/params.hpp"
#include "tksub/reduction.hpp"
#include "tksub/report.hpp"
#include "tksub/sparse.hpp"
#include "tksub/tk_greedy.hpp"

namespace tksub {

// A produced certificate that does not validate against the input graph.
// This is never a property of the input; it is a bug in the engine.
struct InternalBreachError : GraphError {
  explicit InternalBreachError(const std::string& what) : GraphError(what) {}
};

struct FindResult {
  SubdivisionCertificate cert;
  bool has_cert = false;
  bool partial = false;       // cert came out of a failed embed's wreckage
  std::string fail_reason;
  RunReport report;
};

namespace detail {

inline void note_simple(RunReport& report, const std::string& stage, const std::string& lemma,
                        json sizes, const std::string& outcome) {
  StageNote note;
  note.stage = stage;
  note.lemma = lemma;
  note.sizes = std::move(sizes);
  note.outcome = outcome;
  report.add(note);
}

// The staged engine behind every mode except drc. Returns a certificate or
// throws one of the structured failure types.
inline std::optional<SubdivisionCertificate> run_engine(const Graph& g, const std::string& mode,
                                                        const ParamSet& ps, std::uint64_t seed,
                                                        RunReport& report) {
  if (g.m() == 0) {
    note_simple(report, "route", "degenerate-input", {{"n", g.n()}, {"m", 0}}, "greedy");
    return generic_tk(g);
  }

  Graph gb = bipartite_half(g, Rng::derive(seed, 1));
  note_simple(report, "bipartite-half", "max-cut-greedy",
              {{"n", gb.n()}, {"m_before", g.m()}, {"m_after", gb.m()}}, "ok");

  Graph host = gb;
  if (has_short_cycle(host, {4})) {
    try {
      Graph pruned = gyori_extract(host);
      note_simple(report, "square-free-extract", "densest-square-free-subgraph",
                  {{"m_before", host.m()}, {"m_after", pruned.m()}}, "ok");
      host = std::move(pruned);
    } catch (const NotC6FreeError&) {
      note_simple(report, "square-free-extract", "densest-square-free-subgraph", json::object(),
                  "skipped-has-hexagon");
    }
  }
  if (host.m() == 0) {
    note_simple(report, "route", "degenerate-host", {{"n", host.n()}}, "greedy");
    return generic_tk(g);
  }

  ExtractResult ex = extract_expander(host, ps.eps1, ps.eps2, ps.retries, Rng::derive(seed, 2));
  note_simple(report, "expander-extract", "densest-then-peel",
              {{"n", ex.h.n()},
               {"m", ex.h.m()},
               {"t", ex.t},
               {"rounds", ex.rounds},
               {"certified", ex.certified}},
              "ok");
  const Graph& h = ex.h;
  if (h.m() == 0) return generic_tk(g);

  ResolvedParams rp = ps.resolve(h.n(), h.avg_degree());
  ReduceResult red = reduce_max_degree(h, rp, Rng::derive(seed, 3), &report);
  if (red.cert) return *red.cert;
  if (mode == "reduce-only") return std::nullopt;

  const Graph& hr = red.reduced;
  if (hr.m() == 0) return generic_tk(g);
  ParamSet ps2 = ps;
  if (red.removed > 0) {  // expansion degrades when vertices leave
    ps2.eps1 = ps.eps1 / 8.0;
    ps2.eps2 = ps.eps2 * 4.0;
  }
  ResolvedParams rp2 = ps2.resolve(hr.n(), hr.avg_degree());

  bool go_dense;
  if (mode == "dense") go_dense = true;
  else if (mode == "sparse") go_dense = false;
  else go_dense = rp2.d >= rp2.dense_threshold;
  note_simple(report, "route", "density-threshold",
              {{"d", rp2.d}, {"threshold", rp2.dense_threshold}, {"ell", rp2.ell}},
              go_dense ? "dense" : "sparse");

  if (go_dense) return dense_embed(hr, rp2, Rng::derive(seed, 4), &report);
  return sparse_pipeline(hr, ps2, rp2, Rng::derive(seed, 5), &report);
}

}  // namespace detail

// Front door: run the requested mode, validate whatever came out against the
// original graph, and fold structured failures into the result instead of
// leaking them. A certificate that fails validation is never returned; it
// raises InternalBreachError.
inline FindResult find_subdivision(const Graph& g, const std::string& mode, const ParamSet& ps,
                                   std::uint64_t seed) {
  if (g.n() == 0) throw EmptyGraphError("find_subdivision: empty graph");
  FindResult res;
  res.report.mode = mode;
  res.report.overrides = RunReport::overrides_json(ps);

  std::optional<SubdivisionCertificate> cert;
  try {
    if (mode == "drc") {
      ResolvedParams rp = ps.resolve(g.n(), g.avg_degree());
      cert = drc_pipeline(g, ps, rp.drc_ell, seed, &res.report);
    } else {
      cert = detail::run_engine(g, mode, ps, seed, res.report);
    }
  } catch (const EmbedFailedError& e) {
    res.partial = true;
    res.fail_reason = e.reason;
    if (e.partial.ell() >= 1) cert = e.partial;
  } catch (const StageFailedError& e) {
    res.fail_reason = "set-construction: " + e.constraint;
  } catch (const SparsifyFailedError& e) {
    res.fail_reason = e.what();
  } catch (const BalanceFailedError& e) {
    res.fail_reason = e.what();
  } catch (const SelectFailedError& e) {
    res.fail_reason = e.what();
  } catch (const NoConnectorError& e) {
    res.fail_reason = e.what();
  } catch (const NoHatsError& e) {
    res.fail_reason = e.what();
  }

  if (cert) {
    ValidationReport vr = validate(g, *cert);
    if (!vr.valid)
      throw InternalBreachError("produced certificate failed validation: " +
                                vr.to_json().dump());
    res.cert = std::move(*cert);
    res.has_cert = true;
  }
  {
    StageNote note;
    note.stage = "outcome";
    note.lemma = "validated-certificate";
    note.sizes = {{"ell", res.has_cert ? res.cert.ell() : 0}};
    note.outcome = res.has_cert ? (res.partial ? "partial" : "ok")
                                : (mode == "reduce-only" ? "report-only" : "failed");
    if (!res.fail_reason.empty()) note.params = {{"reason", res.fail_reason}};
    res.report.add(note);
  }
  return res;
}

}  // namespace tksub
