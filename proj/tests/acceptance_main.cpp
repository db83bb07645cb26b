// Acceptance harness: one pass/fail line per criterion, exit code = number
// of failed criteria. No test framework on purpose — this is the artifact a
// release gets judged by, so it stays a flat list of checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/drc.hpp"
#include "tksub/expander.hpp"
#include "tksub/generators.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/hat.hpp"
#include "tksub/params.hpp"
#include "tksub/pipeline.hpp"
#include "tksub/tk_greedy.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string why;
};

// keep the first reason; later ones rarely add information
void fail(Outcome& o, const std::string& why) {
  if (o.ok) {
    o.ok = false;
    o.why = why;
  }
}

tksub::Graph complete_graph(int n) {
  tksub::Graph::Builder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return b.build();
}

tksub::Graph cycle_graph(int n) {
  tksub::Graph::Builder b(n);
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  return b.build();
}

tksub::Graph random_graph(int n, double p, std::uint64_t seed) {
  tksub::Graph::Builder b(n);
  tksub::Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin(p)) b.add_edge(i, j);
  return b.build();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return "<unreadable:" + path + ">";
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- criterion 1

void crit_soundness(Outcome& o) {
  struct Inst {
    std::string label;
    std::function<tksub::Graph(std::uint64_t)> make;
  };
  std::vector<Inst> corpus;
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23})
    corpus.push_back({"polarity-" + std::to_string(q),
                      [q](std::uint64_t) { return tksub::polarity_graph(q); }});
  for (int q : {2, 3, 4})
    corpus.push_back(
        {"gq-" + std::to_string(q), [q](std::uint64_t) { return tksub::gq_incidence(q); }});
  for (int q : {2, 3, 4})
    corpus.push_back({"projective-" + std::to_string(q),
                      [q](std::uint64_t) { return tksub::projective_incidence(q); }});
  for (auto [d, copies] : std::vector<std::pair<int, int>>{
           {2, 2}, {2, 5}, {2, 9}, {3, 1}, {3, 3}, {4, 2}, {4, 4}, {5, 1}, {5, 3}, {6, 2}, {7, 1}})
    corpus.push_back({"kdd-" + std::to_string(d) + "x" + std::to_string(copies),
                      [d, copies](std::uint64_t) { return tksub::disjoint_kdd(d, copies); }});
  std::vector<std::tuple<int, int, double>> shapes = {
      {8, 8, 0.5},    {10, 14, 0.3},  {16, 16, 0.25}, {20, 20, 0.2},  {25, 30, 0.15},
      {30, 30, 0.12}, {40, 40, 0.1},  {50, 50, 0.08}, {60, 60, 0.07}, {75, 75, 0.05},
      {90, 90, 0.05}, {100, 100, 0.04}, {120, 80, 0.05}, {12, 12, 0.4},  {15, 45, 0.2},
      {5, 5, 0.6},    {64, 64, 0.09}, {80, 120, 0.04}, {33, 67, 0.1},  {150, 150, 0.03}};
  for (auto [na, nb, p] : shapes)
    corpus.push_back({"random-" + std::to_string(na) + "x" + std::to_string(nb),
                      [na = na, nb = nb, p = p](std::uint64_t s) {
                        return tksub::random_bipartite(na, nb, p,
                                                       tksub::Rng::derive(s, 10000 + na));
                      }});
  if (corpus.size() != 50) {
    fail(o, "corpus holds " + std::to_string(corpus.size()) + " instances, wanted 50");
    return;
  }

  tksub::ParamSet ps;
  auto t0 = Clock::now();
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const Inst& inst : corpus) {
      std::string tag = inst.label + " seed " + std::to_string(seed);
      try {
        tksub::Graph g = inst.make(seed);
        tksub::FindResult res = tksub::find_subdivision(g, "auto", ps, seed);
        if (res.has_cert) {
          tksub::ValidationReport vr = tksub::validate(g, res.cert);
          if (!vr.valid) fail(o, tag + ": certificate has violations");
        }
      } catch (const std::exception& e) {
        fail(o, tag + ": escaped exception: " + e.what());
      }
      ++runs;
    }
  }
  double dt = seconds_since(t0);
  if (runs != 200) fail(o, "ran " + std::to_string(runs) + " pipelines, wanted 200");
  if (dt > 300.0) fail(o, "took " + std::to_string(dt) + "s, budget is 300s");
}

// ---------------------------------------------------------------- criterion 2

void crit_oracle_agreement(Outcome& o) {
  std::vector<std::pair<std::string, tksub::Graph>> hosts;
  hosts.emplace_back("K4", complete_graph(4));
  hosts.emplace_back("K22", tksub::disjoint_kdd(2, 1));
  hosts.emplace_back("K33", tksub::disjoint_kdd(3, 1));
  hosts.emplace_back("C6", cycle_graph(6));
  for (int i = 0; i < 100; ++i) {
    int n = 4 + (i % 6);
    double p = 0.25 + 0.08 * (i % 8);
    hosts.emplace_back("rand-" + std::to_string(i), random_graph(n, p, 1000 + i));
  }

  tksub::ParamSet ps;
  for (const auto& [label, g] : hosts) {
    tksub::MaxTkResult best = tksub::brute_force_max_tk(g);
    tksub::SubdivisionCertificate greedy = tksub::generic_tk(g);
    if (!tksub::validate(g, greedy).valid) fail(o, label + ": greedy certificate invalid");
    if (greedy.ell() != best.ell)
      fail(o, label + ": greedy found " + std::to_string(greedy.ell()) + ", oracle says " +
                  std::to_string(best.ell));
    for (const char* mode : {"auto", "dense", "sparse", "drc"}) {
      try {
        tksub::FindResult res = tksub::find_subdivision(g, mode, ps, 1);
        if (res.has_cert) {
          if (!tksub::validate(g, res.cert).valid)
            fail(o, label + " mode " + mode + ": invalid certificate");
          if (res.cert.ell() > best.ell)
            fail(o, label + " mode " + mode + ": ell " + std::to_string(res.cert.ell()) +
                        " exceeds the oracle's " + std::to_string(best.ell));
        }
      } catch (const tksub::InternalBreachError& e) {
        fail(o, label + " mode " + mode + ": invariant breach: " + e.what());
      } catch (const std::exception&) {
        // a structured failure on a toy host is acceptable; an overshoot is not
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 3

void crit_jung_family(Outcome& o) {
  const int expected[3] = {3, 4, 5};  // d=4 entry is an upper bound
  for (int d : {2, 3, 4}) {
    tksub::Graph g = tksub::disjoint_kdd(d, 1);
    tksub::MaxTkResult r = tksub::brute_force_max_tk(g);
    if (!tksub::validate(g, r.witness).valid)
      fail(o, "K_{" + std::to_string(d) + "," + std::to_string(d) + "}: witness invalid");
    if (!(static_cast<double>(r.ell) < std::sqrt(8.0 * d)))
      fail(o, "K_{" + std::to_string(d) + "," + std::to_string(d) + "}: ell " +
                  std::to_string(r.ell) + " reaches sqrt(8d)");
    if (d == 4) {
      if (r.ell > expected[2])
        fail(o, "K_{4,4}: ell " + std::to_string(r.ell) + " above the bound 5");
    } else if (r.ell != expected[d - 2]) {
      fail(o, "K_{" + std::to_string(d) + "," + std::to_string(d) + "}: ell " +
                  std::to_string(r.ell) + ", expected " + std::to_string(expected[d - 2]));
    }
  }
}

// ---------------------------------------------------------------- criterion 4

void crit_drc_scaling(Outcome& o) {
  tksub::ParamSet ps;
  std::vector<std::pair<double, double>> points;
  for (int q : {11, 13, 17, 19, 23}) {
    tksub::Graph g = tksub::polarity_graph(q);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      std::string tag = "q=" + std::to_string(q) + " seed " + std::to_string(seed);
      auto t0 = Clock::now();
      tksub::FindResult res = tksub::find_subdivision(g, "drc", ps, seed);
      double dt = seconds_since(t0);
      if (dt > 60.0) fail(o, tag + ": took " + std::to_string(dt) + "s, budget is 60s");
      int ell = 0;
      if (!res.has_cert) {
        fail(o, tag + ": no certificate (" + res.fail_reason + ")");
      } else {
        ell = res.cert.ell();
        if (!tksub::validate(g, res.cert, 3).valid)
          fail(o, tag + ": certificate is not an exact triple subdivision");
        if (q >= 13 && ell < 3) fail(o, tag + ": ell " + std::to_string(ell) + " below 3");
      }
      points.emplace_back(std::sqrt(static_cast<double>(g.n())), static_cast<double>(ell));
    }
  }
  double slope = oracle::least_squares_slope(points);
  if (slope < 0.0) fail(o, "ell vs sqrt(n) slope " + std::to_string(slope) + " is negative");
}

// ---------------------------------------------------------------- criterion 5

void crit_second_neighborhood_mc(Outcome& o) {
  tksub::Graph g = tksub::polarity_graph(13);
  tksub::Graph gb = tksub::balance_bipartite(g, tksub::Rng::derive(7, 3), 20);
  double c = tksub::measured_density(gb);
  tksub::DrcParams p = tksub::desk_params(c, gb.n());
  tksub::DrcMcStats st = tksub::drc_mc(gb, p, 200, 7);
  if (!(st.mean_w >= 0.75 * st.predicted))
    fail(o, "mean common-second-neighborhood " + std::to_string(st.mean_w) +
                " under 0.75 x predicted " + std::to_string(st.predicted));

  int accepted = 0;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
    tksub::VertexSet u;
    try {
      u = tksub::drc_select(gb, p, seed, 20);
    } catch (const tksub::SelectFailedError&) {
      continue;
    }
    ++accepted;
    std::vector<int> ids = u.ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        std::size_t common = oracle::common_sphere2(gb, {ids[i], ids[j]}).size();
        if (common < static_cast<std::size_t>(p.m))
          fail(o, "selected pair (" + std::to_string(ids[i]) + "," + std::to_string(ids[j]) +
                      ") has only " + std::to_string(common) + " common second neighbors");
      }
  }
  if (accepted == 0) fail(o, "no selection run was accepted across 5 seeds");
}

// ---------------------------------------------------------------- criterion 6

void crit_counting_bound_grid(Outcome& o) {
  auto t0 = Clock::now();
  for (double c : {0.3, 0.4, 0.5}) {
    long long base =
        static_cast<long long>(ceill(powl(1.0L / static_cast<long double>(c), 20)));
    for (int k = 1; k <= 5; ++k) {
      long long n = base << k;
      tksub::DrcParams p = tksub::paper_params(c, n);
      if (!tksub::drc_feasible(p, n).ok)
        fail(o, "infeasible at c=" + std::to_string(c) + ", k=" + std::to_string(k));
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 1.0) fail(o, "grid took " + std::to_string(dt) + "s, budget is 1s");
}

// ---------------------------------------------------------------- criterion 7

void crit_expander_postconditions(Outcome& o) {
  int made = 0;
  for (int attempt = 0; made < 50 && attempt < 500; ++attempt) {
    int na = 5 + (attempt * 7) % 96, nb = 5 + (attempt * 11) % 96;
    double p = 0.03 + 0.02 * (attempt % 6);
    tksub::Graph g = tksub::random_bipartite(na, nb, p, tksub::Rng::derive(31, attempt));
    if (g.m() == 0) continue;
    ++made;
    tksub::ExtractResult ex = tksub::extract_expander(g);
    if (ex.h.n() == 0 || ex.h.m() == 0) {
      fail(o, "extraction emptied a host with " + std::to_string(g.m()) + " edges");
      continue;
    }
    if (!(tksub::Rat(2 * ex.h.m(), ex.h.n()) >= tksub::Rat(g.m(), g.n())))
      fail(o, "average degree fell below half the input's");
    if (!(tksub::Rat(ex.h.min_degree(), 1) >= tksub::Rat(ex.h.m(), ex.h.n())))
      fail(o, "minimum degree fell below half the output average");
  }
  if (made < 50) fail(o, "only built " + std::to_string(made) + " of 50 hosts");

  made = 0;
  for (int attempt = 0; made < 100 && attempt < 1000; ++attempt) {
    int na = 2 + (attempt % 7), nb = 2 + ((attempt / 7) % 7);
    double p = 0.2 + 0.1 * (attempt % 5);
    tksub::Graph g = tksub::random_bipartite(na, nb, p, tksub::Rng::derive(33, attempt));
    if (g.m() == 0) continue;
    ++made;
    tksub::ExtractResult ex = tksub::extract_expander(g);
    bool fresh = !tksub::certify_exhaustive(ex.h, 0.05, ex.t).has_value();
    if (ex.certified != fresh)
      fail(o, "certified flag disagrees with the exhaustive check on a " +
                  std::to_string(ex.h.n()) + "-vertex extraction");
  }
  if (made < 100) fail(o, "only built " + std::to_string(made) + " of 100 small hosts");
}

// ---------------------------------------------------------------- criterion 8

void crit_expansion_rate(Outcome& o) {
  const double eps1 = 0.05, t = 10.0;
  const double lo = 0.01 * t, hi = 50.0 * t;
  for (int i = 0; i < 1000; ++i) {
    double x = lo + i * (hi - lo) / 999.0;
    double got = tksub::epsilon(x, eps1, t);
    double want = x < t / 5.0 ? 0.0 : eps1 / std::pow(std::log(15.0 * x / t), 2);
    if (want == 0.0) {
      if (got != 0.0) fail(o, "nonzero rate below t/5 at x=" + std::to_string(x));
    } else if (std::fabs(got - want) / want > 1e-12) {
      fail(o, "rate off by more than 1e-12 relative at x=" + std::to_string(x));
    }
  }
  double prev = -1.0;
  for (int i = 0; i < 1000; ++i) {
    double x = t / 2.0 + i * (20.0 * t - t / 2.0) / 999.0;
    double v = x * tksub::epsilon(x, eps1, t);
    if (v < prev) fail(o, "x*eps(x) decreased at x=" + std::to_string(x));
    prev = v;
  }
}

// ---------------------------------------------------------------- criterion 9

void crit_hat_identity(Outcome& o) {
  for (int q : {2, 3}) {
    std::string tag = "q=" + std::to_string(q);
    tksub::Graph f = tksub::projective_incidence(q);
    tksub::VertexSet x = f.side_vertices(tksub::Side::B);
    tksub::VertexSet y = f.side_vertices(tksub::Side::A);
    tksub::HatSystem hs = tksub::build_hats(f, x, y);
    long long expect = 0;
    for (int v : x.ids()) {
      long long deg = f.degree(v);
      expect += deg * (deg - 1) / 2;
    }
    if (hs.candidate_pairs != expect)
      fail(o, tag + ": " + std::to_string(hs.candidate_pairs) + " hats counted, expected " +
                  std::to_string(expect));
    // every line finds a free endpoint pair (pairs meet in at most one line),
    // and the selected system keeps both pairs and midpoints distinct
    if (hs.midpoint.size() != x.size())
      fail(o, tag + ": " + std::to_string(hs.midpoint.size()) + " hats selected from " +
                  std::to_string(x.size()) + " midpoints");
    if (hs.skipped_midpoints != 0)
      fail(o, tag + ": " + std::to_string(hs.skipped_midpoints) + " midpoints were skipped");
    std::set<int> mids;
    for (const auto& [key, mid] : hs.midpoint) mids.insert(mid);
    if (mids.size() != hs.midpoint.size()) fail(o, tag + ": a midpoint serves two hats");

    tksub::SubdivisionCertificate cert = tksub::hat_subdivision(f, x, y);
    if (!tksub::validate(f, cert).valid) fail(o, tag + ": lifted certificate invalid");
    for (const auto& [key, seq] : cert.paths)
      if ((seq.size() - 1) % 2 != 0)
        fail(o, tag + ": lifted path of odd length " + std::to_string(seq.size() - 1));
    if (q == 3 && cert.ell() < 3)
      fail(o, tag + ": ell " + std::to_string(cert.ell()) + " below 3");
  }
}

// --------------------------------------------------------------- criterion 10

void crit_pipeline_smoke(Outcome& o) {
  tksub::ParamSet ps;
  int prev = 0;
  for (int q : {3, 4, 5}) {
    std::string tag = "gq q=" + std::to_string(q);
    tksub::Graph g = tksub::gq_incidence(q);
    tksub::FindResult res = tksub::find_subdivision(g, "dense", ps, 1);
    if (!res.has_cert) {
      fail(o, tag + ": no certificate (" + res.fail_reason + ")");
      continue;
    }
    if (!tksub::validate(g, res.cert).valid) fail(o, tag + ": certificate invalid");
    if (res.cert.ell() < prev)
      fail(o, tag + ": ell dropped from " + std::to_string(prev) + " to " +
                  std::to_string(res.cert.ell()));
    prev = res.cert.ell();
    if (q == 5 && res.cert.ell() < 3)
      fail(o, tag + ": ell " + std::to_string(res.cert.ell()) + " below 3");
  }

  tksub::Graph big = tksub::random_bipartite(1000, 1000, 0.006, tksub::Rng::derive(2026, 1));
  tksub::FindResult res = tksub::find_subdivision(big, "sparse", ps, 1);
  if (!res.has_cert)
    fail(o, "sparse run surfaced nothing, not even a partial (" + res.fail_reason + ")");
  else if (!tksub::validate(big, res.cert).valid)
    fail(o, "sparse run's certificate has violations");
}

// --------------------------------------------------------------- criterion 11

void crit_cli_determinism(Outcome& o) {
  fs::path dir = fs::temp_directory_path() / "tksub_acceptance";
  fs::create_directories(dir);
  std::string host = (dir / "gq3.txt").string();
  if (oracle::run_cli("gen --family gq --q 3 --out " + host).exit_code != 0) {
    fail(o, "host generation failed");
    return;
  }
  std::string pol = (dir / "pol11.txt").string();
  if (oracle::run_cli("gen --family polarity --q 11 --out " + pol).exit_code != 0) {
    fail(o, "polarity host generation failed");
    return;
  }

  std::string cert_a = (dir / "cert_a.json").string(), cert_b = (dir / "cert_b.json").string();
  oracle::CliResult fa =
      oracle::run_cli("find --graph " + host + " --seed 2 --format json --out " + cert_a);
  oracle::CliResult fb =
      oracle::run_cli("find --graph " + host + " --seed 2 --format json --out " + cert_b);
  if (fa.exit_code != 0 || fb.exit_code != 0) fail(o, "find invocation failed");
  if (fa.out != fb.out) fail(o, "find stdout differs between reruns");
  if (slurp(cert_a) != slurp(cert_b)) fail(o, "certificate files differ between reruns");

  std::string bench_args = "bench --family kdd --range 2..3 --seeds 0,1";
  oracle::CliResult ba = oracle::run_cli(bench_args);
  oracle::CliResult bb = oracle::run_cli(bench_args);
  if (ba.exit_code != 0 || bb.exit_code != 0) fail(o, "bench invocation failed");
  if (ba.out.empty() || ba.out != bb.out) fail(o, "bench csv differs between reruns");

  std::string drc_args = "drc --graph " + pol + " --trials 25 --seed 4";
  oracle::CliResult da = oracle::run_cli(drc_args);
  oracle::CliResult db = oracle::run_cli(drc_args);
  if (da.exit_code != 0 || db.exit_code != 0) fail(o, "drc statistics invocation failed");
  if (da.out != db.out) fail(o, "drc statistics differ between reruns");

  oracle::CliResult ga = oracle::run_cli("gen --family polarity --q 7");
  oracle::CliResult gb = oracle::run_cli("gen --family polarity --q 7");
  if (ga.out.empty() || ga.out != gb.out) fail(o, "generator output differs between reruns");
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* text;
    std::function<void(Outcome&)> body;
  };
  std::vector<Row> rows = {
      {1, "pipeline soundness: 200 fuzzed runs, every certificate validates, under 5 minutes",
       crit_soundness},
      {2, "oracle agreement: no embedder beats exhaustive search on small hosts; greedy matches it",
       crit_oracle_agreement},
      {3, "complete bipartite hosts: best subdivision order stays under sqrt(8d), exact small values",
       crit_jung_family},
      {4, "triple-subdivision scaling on polarity hosts: exact 3-internal paths, ell >= 3 from q = 13, "
          "non-negative slope, 60s per run",
       crit_drc_scaling},
      {5, "sampled second neighborhoods reach 75% of prediction; selected set passes the pair check",
       crit_second_neighborhood_mc},
      {6, "counting-bound predicate accepts the full large-n grid in under a second",
       crit_counting_bound_grid},
      {7, "expander extraction: halved average degree, half-average minimum degree, truthful "
          "certification flags",
       crit_expander_postconditions},
      {8, "expansion rate: 1000-point formula agreement at 1e-12 and monotone x*eps(x), zero tolerance",
       crit_expansion_rate},
      {9, "hat construction on plane incidence hosts: full hat count, distinct pairs, even lifted "
          "paths, ell >= 3",
       crit_hat_identity},
      {10, "dense route on quadrangle hosts reaches ell >= 3 monotonically; sparse route on a "
           "2000-vertex host validates",
       crit_pipeline_smoke},
      {11, "repeated CLI invocations produce byte-identical certificate and CSV outputs",
       crit_cli_determinism},
  };

  int failures = 0;
  for (const Row& row : rows) {
    Outcome o;
    try {
      row.body(o);
    } catch (const std::exception& e) {
      fail(o, std::string("unexpected exception: ") + e.what());
    }
    if (o.ok) {
      std::printf("[PASS] %d. %s\n", row.id, row.text);
    } else {
      std::printf("[FAIL] %d. %s (%s)\n", row.id, row.text, o.why.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %d criteria satisfied\n", static_cast<int>(rows.size()));
  else
    std::printf("%d of %d criteria failed\n", failures, static_cast<int>(rows.size()));
  return failures;
}
