#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include "tksub/generators.hpp"
#include "tksub/graph.hpp"
#include "tksub/params.hpp"
#include "tksub/pipeline.hpp"
#include "tksub/rational.hpp"

namespace tksub {

struct BenchRow {
  std::string family;
  int q_or_d = 0;
  int n = 0;
  Rat d = Rat(0, 1);
  std::string mode;
  int ell = 0;
  double ell_over_sqrt_n = 0;
  double ell_over_d = 0;
  long long runtime_ms = 0;
  std::uint64_t seed = 0;
  bool valid = false;
};

inline Graph bench_instance(const std::string& family, int value, std::uint64_t seed) {
  if (family == "polarity") return polarity_graph(value);
  if (family == "projective") return projective_incidence(value);
  if (family == "gq") return gq_incidence(value);
  if (family == "kdd") return disjoint_kdd(value, 3);
  if (family == "random") {
    int na = value / 2, nb = value - value / 2;
    double p = nb > 0 ? std::min(1.0, 6.0 / nb) : 0.0;
    return random_bipartite(na, nb, p, Rng::derive(seed, 17));
  }
  throw GraphError("unknown family: " + family);
}

// One engine run per (family value, seed); failures land in the row rather
// than escaping. runtime_ms stays zero unless timing was asked for, so the
// default output is reproducible byte for byte.
inline std::vector<BenchRow> run_experiment(const std::string& family,
                                            const std::vector<int>& values,
                                            const std::string& mode,
                                            const std::vector<std::uint64_t>& seeds,
                                            const ParamSet& ps, bool timing = false) {
  std::vector<BenchRow> rows;
  for (int value : values) {
    for (std::uint64_t seed : seeds) {
      BenchRow row;
      row.family = family;
      row.q_or_d = value;
      row.mode = mode;
      row.seed = seed;
      try {
        Graph g = bench_instance(family, value, seed);
        row.n = g.n();
        row.d = g.n() > 0 ? Rat(2 * g.m(), g.n()) : Rat(0, 1);
        auto t0 = std::chrono::steady_clock::now();
        FindResult res = find_subdivision(g, mode, ps, seed);
        auto t1 = std::chrono::steady_clock::now();
        if (timing)
          row.runtime_ms =
              std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        row.ell = res.has_cert ? res.cert.ell() : 0;
        row.valid = res.has_cert;
        double dd = g.n() > 0 ? 2.0 * g.m() / g.n() : 0.0;
        if (row.n > 0) row.ell_over_sqrt_n = row.ell / std::sqrt(static_cast<double>(row.n));
        if (dd > 0) row.ell_over_d = row.ell / dd;
      } catch (const GraphError&) {
        row.valid = false;
      }
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.family, a.q_or_d, a.seed) < std::tie(b.family, b.q_or_d, b.seed);
  });
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "family,q_or_d,n,d,mode,ell,ell_over_sqrt_n,ell_over_d,runtime_ms,seed,valid\n";
  char buf[64];
  for (const BenchRow& r : rows) {
    out += r.family + ',' + std::to_string(r.q_or_d) + ',' + std::to_string(r.n) + ',' +
           r.d.str() + ',' + r.mode + ',' + std::to_string(r.ell) + ',';
    std::snprintf(buf, sizeof(buf), "%.6f", r.ell_over_sqrt_n);
    out += buf;
    out += ',';
    std::snprintf(buf, sizeof(buf), "%.6f", r.ell_over_d);
    out += buf;
    out += ',' + std::to_string(r.runtime_ms) + ',' + std::to_string(r.seed) + ',' +
           (r.valid ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace tksub
