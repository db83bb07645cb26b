#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/params.hpp"
#include "tksub/report.hpp"
#include "tksub/rng.hpp"

namespace tksub {

struct HypothesisFailedError : GraphError {
  explicit HypothesisFailedError(const std::string& what) : GraphError(what) {}
};
struct BalanceFailedError : GraphError {
  json attempts;
  BalanceFailedError(json a, const std::string& what) : GraphError(what), attempts(std::move(a)) {}
};
struct SelectFailedError : GraphError {
  json attempts;
  SelectFailedError(json a, const std::string& what) : GraphError(what), attempts(std::move(a)) {}
};
struct NoConnectorError : GraphError {
  std::pair<int, int> failed_pair;
  json tally;
  NoConnectorError(std::pair<int, int> p, json t, const std::string& what)
      : GraphError(what), failed_pair(p), tally(std::move(t)) {}
};

struct DrcParams {
  double c = 0.5;
  double a = 0;        // how many candidate cores the count argument promises
  int r = 2;           // tuple size in the deletion argument
  int t_samples = 1;   // sampled set size
  long long m = 1;     // required common-second-neighborhood size

  json to_json() const {
    return json{{"c", c}, {"a", a}, {"r", r}, {"t", t_samples}, {"m", m}};
  }
};

// Parameters exactly as the counting argument wants them; only sound when n
// strictly exceeds c^-20.
inline DrcParams paper_params(double c, long long n) {
  if (!(c > 0.0 && c < 1.0))
    throw HypothesisFailedError("density parameter must lie strictly between 0 and 1");
  if (!(static_cast<long double>(n) > powl(1.0L / static_cast<long double>(c), 20)))
    throw HypothesisFailedError("need n > c^-20; n = " + std::to_string(n));
  DrcParams p;
  p.c = c;
  p.a = std::pow(c, 6) * std::sqrt(static_cast<double>(n)) / 240.0;
  p.r = 2;
  p.t_samples = std::max(
      1, static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / (4.0 * std::log(1.0 / c)))));
  p.m = std::max(1LL, static_cast<long long>(std::floor(std::pow(c, 6) * static_cast<double>(n) / 2.0)));
  return p;
}

// Same shapes without the hypothesis: c measured from the graph and clamped.
inline DrcParams desk_params(double c_measured, long long n) {
  DrcParams p;
  p.c = std::clamp(c_measured, 1e-6, 0.9);
  p.a = std::pow(p.c, 6) * std::sqrt(static_cast<double>(std::max(1LL, n))) / 240.0;
  p.r = 2;
  p.t_samples = std::max(
      1, static_cast<int>(std::ceil(std::log(static_cast<double>(std::max(2LL, n))) /
                                    (4.0 * std::log(1.0 / p.c)))));
  p.m = std::max(1LL, static_cast<long long>(std::floor(std::pow(p.c, 6) * static_cast<double>(n) / 2.0)));
  return p;
}

inline double measured_density(const Graph& g) {
  if (g.n() == 0) return 0.0;
  return static_cast<double>(g.m()) / std::pow(static_cast<double>(g.n()), 1.5);
}

struct DrcFeasibility {
  long double expected_w = 0;  // c^2t n
  long double bad_mass = 0;    // C(n,r) (m / (n/2))^t
  long double lower = 0;
  bool ok = false;

  json to_json() const {
    return json{{"expected_w", static_cast<double>(expected_w)},
                {"bad_mass", static_cast<double>(bad_mass)},
                {"lower", static_cast<double>(lower)},
                {"ok", ok}};
  }
};

namespace detail {

inline long double log_binomial(long long n, int r) {
  if (r < 0 || static_cast<long long>(r) > n) return 0.0L;
  long double s = 0;
  for (int k = 0; k < r; ++k)
    s += logl(static_cast<long double>(n - k)) - logl(static_cast<long double>(k + 1));
  return s;
}

}  // namespace detail

// Whether the counting lower bound  c^2t n - C(n,r) (m/(n/2))^t >= a  holds,
// evaluated in the log domain so huge n cannot overflow.
inline DrcFeasibility drc_feasible(const DrcParams& p, long long n) {
  DrcFeasibility f;
  if (n <= 0) return f;
  long double log_first = 2.0L * p.t_samples * logl(static_cast<long double>(p.c)) +
                          logl(static_cast<long double>(n));
  f.expected_w = expl(log_first);
  if (p.m > 0 && n >= 2) {
    long double log_second =
        detail::log_binomial(n, p.r) +
        static_cast<long double>(p.t_samples) *
            (logl(static_cast<long double>(p.m)) - logl(static_cast<long double>(n) / 2.0L));
    f.bad_mass = expl(log_second);
  }
  f.lower = f.expected_w - f.bad_mass;
  f.ok = f.lower >= static_cast<long double>(p.a);
  return f;
}

// Rebalances any graph into a bipartite half-split: high-degree vertices are
// forced onto the A side, B is a uniformly sampled half of the rest, and the
// split is accepted once it keeps 9/25 of the edges with no B vertex taking
// more than 60 e'/n of them.
inline Graph balance_bipartite(const Graph& g, std::uint64_t seed, int retries = 20,
                               RunReport* report = nullptr) {
  if (g.m() == 0) throw EmptyGraphError("balance_bipartite: graph has no edges");
  const long long n = g.n(), e = g.m();
  std::vector<int> forced_a, pool;
  for (int v : g.vertices()) {
    if (static_cast<long long>(g.degree(v)) * n >= 20 * e) forced_a.push_back(v);
    else pool.push_back(v);
  }
  const std::size_t bsize = static_cast<std::size_t>(n / 2);
  json attempts = json::array();
  for (int attempt = 0; attempt < std::max(1, retries); ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<int> shuffled = pool;
    rng.shuffle(shuffled);
    std::size_t take = std::min(bsize, shuffled.size());
    VertexSet b(std::vector<int>(shuffled.begin(), shuffled.begin() + static_cast<long>(take)));
    VertexSet a = g.vertex_set().minus(b);
    Graph bip = g.induced_bipartite(a, b);
    long long eprime = bip.m();
    int max_b = 0;
    for (int v : b) max_b = std::max(max_b, bip.degree(v));
    bool enough_edges = 25 * eprime >= 9 * e;
    bool spread = static_cast<long long>(max_b) * n < 60 * eprime;
    attempts.push_back(json{{"attempt", attempt},
                            {"edges_kept", eprime},
                            {"max_b_degree", max_b},
                            {"enough_edges", enough_edges},
                            {"spread", spread}});
    if (enough_edges && spread) {
      if (report) {
        StageNote note;
        note.stage = "balance";
        note.lemma = "half-split";
        note.sizes = {{"a", a.size()}, {"b", b.size()}, {"edges_kept", eprime}};
        note.discards = {{"attempts", attempts}};
        note.outcome = take < bsize ? "warning" : "ok";
        report->add(note);
      }
      return bip;
    }
  }
  throw BalanceFailedError(attempts, "no half-split passed the edge and spread checks");
}

// Sample t vertices of A with repetition, take the common distance-2
// neighborhood W, and delete greedily until no r-subset of the remainder has
// a small common second neighborhood. Accepts once at least max(2, ceil(a))
// vertices remain; every surviving r-subset is then re-verified exhaustively.
inline VertexSet drc_select(const Graph& g, const DrcParams& p, std::uint64_t seed,
                            int retries = 20, RunReport* report = nullptr) {
  if (!g.has_sides()) throw GraphError("drc_select: needs a bipartite split");
  std::vector<int> aside = g.side_vertices(Side::A).ids();
  if (aside.empty()) throw GraphError("drc_select: side A is empty");
  const std::size_t accept_min =
      static_cast<std::size_t>(std::max<long long>(2, static_cast<long long>(std::ceil(p.a))));

  json attempts = json::array();
  for (int attempt = 0; attempt < std::max(1, retries); ++attempt) {
    Rng rng(Rng::derive(seed, 500 + static_cast<std::uint64_t>(attempt)));
    std::vector<int> t;
    for (int k = 0; k < p.t_samples; ++k) t.push_back(aside[rng.index(aside.size())]);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    VertexSet w = common_i_neighborhood(g, t, 2);
    std::vector<int> wid = w.ids();

    // distance-2 shells as bitsets over the universe
    std::size_t words = (static_cast<std::size_t>(g.universe()) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> shell(wid.size(),
                                                  std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < wid.size(); ++i)
      for (int x : sphere(g, wid[i], 2))
        shell[i][static_cast<std::size_t>(x) / 64] |= 1ULL << (static_cast<std::size_t>(x) % 64);
    auto common2 = [&](const std::vector<std::size_t>& idx) {
      long long cnt = 0;
      for (std::size_t wdi = 0; wdi < words; ++wdi) {
        std::uint64_t acc = ~0ULL;
        for (std::size_t i : idx) acc &= shell[i][wdi];
        cnt += __builtin_popcountll(acc);
      }
      return cnt;
    };

    std::vector<std::vector<std::size_t>> bad;
    {
      std::vector<std::size_t> idx(static_cast<std::size_t>(p.r));
      auto rec = [&](auto&& self, std::size_t pos, std::size_t next) -> void {
        if (pos == idx.size()) {
          if (common2(idx) < p.m) bad.push_back(idx);
          return;
        }
        for (std::size_t i = next; i < wid.size(); ++i) {
          idx[pos] = i;
          self(self, pos + 1, i + 1);
        }
      };
      if (p.r >= 1 && wid.size() >= static_cast<std::size_t>(p.r)) {
        double combos = 1;
        for (int k = 0; k < p.r; ++k) combos *= static_cast<double>(wid.size() - k) / (k + 1);
        if (combos > 2e6)
          throw TooLargeError("drc_select: too many candidate tuples to scan (" +
                              std::to_string(wid.size()) + " choose " + std::to_string(p.r) + ")");
        rec(rec, 0, 0);
      }
    }

    std::vector<char> dead(wid.size(), 0);
    std::size_t bad_total = bad.size();
    while (!bad.empty()) {
      std::vector<int> hits(wid.size(), 0);
      for (const auto& s : bad)
        for (std::size_t i : s) ++hits[i];
      std::size_t kill = 0;
      for (std::size_t i = 1; i < wid.size(); ++i)
        if (hits[i] > hits[kill]) kill = i;
      dead[kill] = 1;
      std::vector<std::vector<std::size_t>> rest;
      for (auto& s : bad)
        if (std::find(s.begin(), s.end(), kill) == s.end()) rest.push_back(std::move(s));
      bad = std::move(rest);
    }
    std::vector<int> uid;
    for (std::size_t i = 0; i < wid.size(); ++i)
      if (!dead[i]) uid.push_back(wid[i]);

    attempts.push_back(json{{"attempt", attempt},
                            {"sampled", t.size()},
                            {"w", wid.size()},
                            {"bad_tuples", bad_total},
                            {"u", uid.size()}});
    if (uid.size() >= accept_min) {
      for (std::size_t i = 0; i < uid.size(); ++i) {  // exhaustive recheck, independent path
        std::vector<int> s{uid[i]};
        auto rec = [&](auto&& self, std::size_t next) -> void {
          if (static_cast<int>(s.size()) == p.r) {
            if (static_cast<long long>(common_i_neighborhood(g, s, 2).size()) < p.m)
              throw GraphError("drc_select: surviving tuple fails its neighborhood bound");
            return;
          }
          for (std::size_t j = next; j < uid.size(); ++j) {
            s.push_back(uid[j]);
            self(self, j + 1);
            s.pop_back();
          }
        };
        rec(rec, i + 1);
      }
      if (report) {
        StageNote note;
        note.stage = "select";
        note.lemma = "common-neighborhood-cleanup";
        note.params = p.to_json();
        note.sizes = {{"w", wid.size()}, {"u", uid.size()}, {"accept_min", accept_min}};
        note.discards = {{"bad_tuples", bad_total}, {"attempts", attempts}};
        note.outcome = "ok";
        report->add(note);
      }
      return VertexSet(uid);
    }
  }
  if (report) {
    StageNote note;
    note.stage = "select";
    note.lemma = "common-neighborhood-cleanup";
    note.params = p.to_json();
    note.discards = {{"attempts", attempts}};
    note.outcome = "failed";
    report->add(note);
  }
  throw SelectFailedError(attempts, "no sampled neighborhood kept enough candidate cores");
}

// Exactly-3-times-subdivided clique on the first ell candidates: each pair
// gets a path core-x-v-y-core where v is a fresh distance-2 meeting point
// with two fresh distinct connectors, scanned in ascending order.
inline SubdivisionCertificate embed_3subdivision(const Graph& g, const VertexSet& u, int ell,
                                                 RunReport* report = nullptr) {
  if (ell < 1) throw GraphError("embed_3subdivision: need at least one core");
  if (static_cast<int>(u.size()) < ell)
    throw GraphError("embed_3subdivision: only " + std::to_string(u.size()) +
                     " candidates for " + std::to_string(ell) + " cores");
  std::vector<int> cores(u.ids().begin(), u.ids().begin() + ell);
  std::vector<char> used(static_cast<std::size_t>(g.universe()), 0);
  std::map<int, VertexSet> sph;
  auto sphere2 = [&](int v) -> const VertexSet& {
    auto it = sph.find(v);
    if (it == sph.end()) it = sph.emplace(v, sphere(g, v, 2)).first;
    return it->second;
  };

  int c4_warnings = 0;
  std::vector<std::vector<int>> paths;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    for (std::size_t j = i + 1; j < cores.size(); ++j) {
      int cu = cores[i], cw = cores[j];
      VertexSet meet = sphere2(cu).intersect(sphere2(cw));
      json tally{{"meet", meet.size()}, {"single_connector", 0}, {"in_candidates", 0},
                 {"used_meet", 0},      {"used_connector", 0},  {"no_orientation", 0}};
      bool done = false;
      for (int v : meet) {
        std::vector<int> common;
        for (int x : g.neighbors(v))
          if (g.has_edge(cu, x) || g.has_edge(cw, x)) common.push_back(x);
        if (common.size() > 2) ++c4_warnings;  // two meeting points share ends: a 4-cycle
        if (common.size() < 2) {
          tally["single_connector"] = tally["single_connector"].get<int>() + 1;
          continue;
        }
        if (u.contains(v)) {
          tally["in_candidates"] = tally["in_candidates"].get<int>() + 1;
          continue;
        }
        if (used[static_cast<std::size_t>(v)]) {
          tally["used_meet"] = tally["used_meet"].get<int>() + 1;
          continue;
        }
        bool touched = false;
        for (int x : common)
          if (used[static_cast<std::size_t>(x)]) touched = true;
        if (touched) {
          tally["used_connector"] = tally["used_connector"].get<int>() + 1;
          continue;
        }
        int px = -1, py = -1;
        for (int x : common) {
          if (!g.has_edge(cu, x)) continue;
          for (int y : common) {
            if (y == x || !g.has_edge(cw, y)) continue;
            px = x;
            py = y;
            break;
          }
          if (px != -1) break;
        }
        if (px == -1) {
          tally["no_orientation"] = tally["no_orientation"].get<int>() + 1;
          continue;
        }
        used[static_cast<std::size_t>(v)] = 1;
        used[static_cast<std::size_t>(px)] = 1;
        used[static_cast<std::size_t>(py)] = 1;
        paths.push_back({cu, px, v, py, cw});
        done = true;
        break;
      }
      if (!done)
        throw NoConnectorError({cu, cw}, tally,
                               "no meeting point left for cores " + std::to_string(cu) + " and " +
                                   std::to_string(cw));
    }
  }
  if (report) {
    StageNote note;
    note.stage = "three-subdivision";
    note.lemma = "two-step-meeting-points";
    note.sizes = {{"ell", ell}, {"paths", paths.size()}};
    note.discards = {{"c4_warnings", c4_warnings}};
    note.outcome = "ok";
    report->add(note);
  }
  return SubdivisionCertificate::make(std::move(cores), std::move(paths));
}

struct DrcMcStats {
  int trials = 0;
  double mean_w = 0;
  double predicted = 0;  // c^2t n
  double ratio = 0;
  std::vector<long long> samples;

  json to_json() const {
    return json{{"trials", trials},
                {"mean_w", mean_w},
                {"predicted", predicted},
                {"ratio", ratio}};
  }
};

// Monte Carlo estimate of |common second neighborhood of a random t-sample|,
// for comparing the sampling reality against the counting prediction.
inline DrcMcStats drc_mc(const Graph& g, const DrcParams& p, int trials, std::uint64_t seed) {
  if (!g.has_sides()) throw GraphError("drc_mc: needs a bipartite split");
  std::vector<int> aside = g.side_vertices(Side::A).ids();
  if (aside.empty()) throw GraphError("drc_mc: side A is empty");
  DrcMcStats st;
  st.trials = trials;
  long long total = 0;
  for (int tr = 0; tr < trials; ++tr) {
    Rng rng(Rng::derive(seed, 900 + static_cast<std::uint64_t>(tr)));
    std::vector<int> t;
    for (int k = 0; k < p.t_samples; ++k) t.push_back(aside[rng.index(aside.size())]);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    long long w = static_cast<long long>(common_i_neighborhood(g, t, 2).size());
    st.samples.push_back(w);
    total += w;
  }
  st.mean_w = trials > 0 ? static_cast<double>(total) / trials : 0.0;
  st.predicted = static_cast<double>(powl(static_cast<long double>(p.c), 2 * p.t_samples) *
                                     static_cast<long double>(g.n()));
  st.ratio = st.predicted > 0 ? st.mean_w / st.predicted : 0.0;
  return st;
}

// Balance, select, then embed with a shrinking clique size; a total miss
// still throws with a single-vertex certificate attached.
inline SubdivisionCertificate drc_pipeline(const Graph& g, const ParamSet& ps, int ell_target,
                                           std::uint64_t seed, RunReport* report = nullptr) {
  Graph balanced = balance_bipartite(g, Rng::derive(seed, 3), ps.retries, report);
  DrcParams p = desk_params(measured_density(balanced), balanced.n());
  if (report) {
    StageNote note;
    note.stage = "drc-parameters";
    note.lemma = "counting-bound";
    note.params = p.to_json();
    note.sizes = {{"n", balanced.n()}, {"edges", balanced.m()}};
    note.outcome = drc_feasible(p, balanced.n()).ok ? "ok" : "warning";
    report->add(note);
  }
  VertexSet u = drc_select(balanced, p, Rng::derive(seed, 5), ps.retries, report);

  int start = std::min(static_cast<int>(u.size()), std::max(2, ell_target));
  for (int ell = start; ell >= 2; --ell) {
    try {
      SubdivisionCertificate cert = embed_3subdivision(balanced, u, ell, report);
      return cert;
    } catch (const NoConnectorError& e) {
      if (report) {
        StageNote note;
        note.stage = "three-subdivision";
        note.lemma = "two-step-meeting-points";
        note.params = {{"ell", ell},
                       {"pair", json::array({e.failed_pair.first, e.failed_pair.second})}};
        note.discards = {{"tally", e.tally}};
        note.outcome = "shrink";
        report->add(note);
      }
    }
  }
  std::vector<int> first{u.ids().front()};
  SubdivisionCertificate partial = SubdivisionCertificate::make(std::move(first), {});
  throw EmbedFailedError(partial, "connection", "no pair of candidate cores could be linked");
}

}  // namespace tksub
