#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/graph.hpp"
#include "tksub/report.hpp"
#include "tksub/tk_greedy.hpp"

namespace tksub {

struct NoHatsError : GraphError {
  explicit NoHatsError(const std::string& what = "no vertex of the midpoint side has two neighbors")
      : GraphError(what) {}
};

// A hat is a length-2 path y1-x-y2 with midpoint x in X and endpoints in Y.
// One hat per midpoint; each chosen hat contributes edge {y1,y2} of the
// abstract graph on Y, and the midpoint map inverts that contribution.
struct HatSystem {
  Graph h;                                  // abstract graph on Y (host ids)
  std::map<std::pair<int, int>, int> midpoint;  // H-edge (a<b) -> midpoint in X
  long long candidate_pairs = 0;            // sum over X of C(deg,2)
  int skipped_midpoints = 0;                // deg >= 2 but every pair already taken
};

// Total number of endpoint pairs available, counted with multiplicity:
// sum_{x in X} C(deg_Y(x), 2). On a C4-free host no two midpoints share an
// endpoint pair, so this also counts distinct pairs.
inline long long hat_pair_count(const Graph& f, const VertexSet& x) {
  long long total = 0;
  for (int v : x) {
    if (!f.present(v)) continue;
    long long deg = f.degree(v);
    total += deg * (deg - 1) / 2;
  }
  return total;
}

inline HatSystem build_hats(const Graph& f, const VertexSet& x, const VertexSet& y) {
  HatSystem hs;
  hs.candidate_pairs = hat_pair_count(f, x);

  std::map<std::pair<int, int>, int> chosen;
  for (int v : x) {
    if (!f.present(v)) continue;
    std::vector<int> ends;
    for (int w : f.neighbors(v))
      if (y.contains(w)) ends.push_back(w);
    if (ends.size() < 2) continue;
    bool placed = false;
    for (std::size_t i = 0; i < ends.size() && !placed; ++i)
      for (std::size_t j = i + 1; j < ends.size() && !placed; ++j) {
        std::pair<int, int> key{ends[i], ends[j]};
        if (chosen.count(key)) continue;
        chosen.emplace(key, v);
        placed = true;
      }
    if (!placed) ++hs.skipped_midpoints;
  }
  if (chosen.empty()) throw NoHatsError();

  Graph::Builder b(f.universe());
  for (const auto& [key, mid] : chosen) b.add_edge(key.first, key.second);
  hs.h = b.build().induced(y);
  hs.midpoint = std::move(chosen);
  return hs;
}

// Expand a certificate on the abstract graph back into the host: every
// H-edge along a path becomes two host edges through its hat midpoint, so
// lifted path lengths are exactly doubled. Distinct H-edges have distinct
// midpoints and a valid TK uses each H-edge at most once, so the lift
// preserves internal disjointness.
inline SubdivisionCertificate lift_through_hats(const HatSystem& hs,
                                                const SubdivisionCertificate& abstract_cert) {
  SubdivisionCertificate out;
  out.cores = abstract_cert.cores;
  for (const auto& [key, seq] : abstract_cert.paths) {
    std::vector<int> lifted;
    lifted.push_back(seq.front());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      int a = std::min(seq[i], seq[i + 1]);
      int b = std::max(seq[i], seq[i + 1]);
      auto it = hs.midpoint.find({a, b});
      if (it == hs.midpoint.end())
        throw GraphError("certificate uses edge " + std::to_string(a) + "-" + std::to_string(b) +
                         " that no hat provides");
      lifted.push_back(it->second);
      lifted.push_back(seq[i + 1]);
    }
    out.paths[key] = std::move(lifted);
  }
  return out;
}

// Full route of the 1-subdivision argument: build hats on F[X,Y], find a
// topological clique in the abstract graph, lift it back to F.
inline SubdivisionCertificate hat_subdivision(const Graph& f, const VertexSet& x,
                                              const VertexSet& y, int target = 0,
                                              RunReport* report = nullptr) {
  HatSystem hs = build_hats(f, x, y);
  SubdivisionCertificate abstract_cert = generic_tk(hs.h, target);
  if (report) {
    StageNote note;
    note.stage = "hat-subdivision";
    note.lemma = "one-subdivision-lift";
    note.sizes = {{"x", x.size()},
                  {"y", y.size()},
                  {"hats", hs.midpoint.size()},
                  {"candidate_pairs", hs.candidate_pairs},
                  {"abstract_n", hs.h.n()},
                  {"abstract_m", hs.h.m()},
                  {"ell", abstract_cert.ell()}};
    note.discards = {{"skipped_midpoints", hs.skipped_midpoints}};
    note.outcome = "ok";
    report->add(note);
  }
  return lift_through_hats(hs, abstract_cert);
}

}  // namespace tksub
