#pragma once

// Deliberately naive re-implementations used to cross-check the library.
// Everything here trades speed for obviousness; keep inputs tiny.

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/graph.hpp"
#include "tksub/rational.hpp"

namespace oracle {

// Is there a simple cycle of length exactly len? Plain DFS from every anchor.
inline bool has_cycle_of_length(const tksub::Graph& g, int len) {
  std::vector<int> path;
  std::set<int> on_path;
  bool found = false;
  auto dfs = [&](auto&& self, int v) -> void {
    if (found) return;
    if (static_cast<int>(path.size()) == len) {
      if (g.has_edge(v, path.front())) found = true;
      return;
    }
    for (int w : g.neighbors(v)) {
      if (on_path.count(w)) continue;
      if (w < path.front()) continue;  // anchor stays the minimum: no revisits
      path.push_back(w);
      on_path.insert(w);
      self(self, w);
      on_path.erase(w);
      path.pop_back();
      if (found) return;
    }
  };
  for (int s : g.vertices()) {
    path = {s};
    on_path = {s};
    dfs(dfs, s);
    if (found) return true;
  }
  return false;
}

// Highest edge/vertex ratio over all nonempty subsets (n <= 20 or so).
inline tksub::Rat densest_ratio(const tksub::Graph& g) {
  std::vector<int> verts = g.vertices();
  int n = static_cast<int>(verts.size());
  tksub::Rat best(0, 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    long long edges = 0, size = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      ++size;
      for (int j = i + 1; j < n; ++j)
        if ((mask & (1u << j)) && g.has_edge(verts[i], verts[j])) ++edges;
    }
    tksub::Rat r(edges, size);
    if (r > best) best = r;
  }
  return best;
}

// Distance-exactly-2 set of a single vertex, by definition.
inline std::set<int> sphere2(const tksub::Graph& g, int u) {
  std::set<int> out;
  for (int v : g.vertices()) {
    if (v == u || g.has_edge(u, v)) continue;
    for (int w : g.neighbors(u))
      if (g.has_edge(w, v)) {
        out.insert(v);
        break;
      }
  }
  return out;
}

inline std::set<int> common_sphere2(const tksub::Graph& g, const std::vector<int>& s) {
  std::set<int> acc;
  bool first = true;
  for (int u : s) {
    std::set<int> cur = sphere2(g, u);
    if (first) {
      acc = cur;
      first = false;
    } else {
      std::set<int> next;
      for (int v : acc)
        if (cur.count(v)) next.insert(v);
      acc = next;
    }
  }
  return acc;
}

// Certificate check written from the definition, sharing no code with the
// library validator.
inline bool naive_valid(const tksub::Graph& g, const tksub::SubdivisionCertificate& cert,
                        std::optional<int> exact_internal = std::nullopt) {
  const auto& cores = cert.cores;
  for (std::size_t i = 0; i + 1 < cores.size(); ++i)
    if (cores[i] >= cores[i + 1]) return false;
  std::set<int> core_set(cores.begin(), cores.end());
  for (int c : cores)
    if (!g.present(c)) return false;

  std::set<std::pair<int, int>> want;
  for (std::size_t i = 0; i < cores.size(); ++i)
    for (std::size_t j = i + 1; j < cores.size(); ++j) want.insert({cores[i], cores[j]});
  std::set<std::pair<int, int>> have;
  std::set<int> internals;
  for (const auto& [key, seq] : cert.paths) {
    if (!want.count(key) || have.count(key)) return false;
    have.insert(key);
    if (seq.size() < 2) return false;
    if (seq.front() != key.first || seq.back() != key.second) return false;
    std::set<int> seen;
    for (int v : seq) {
      if (!g.present(v) || seen.count(v)) return false;
      seen.insert(v);
    }
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
      if (!g.has_edge(seq[k], seq[k + 1])) return false;
    if (exact_internal && static_cast<int>(seq.size()) - 2 != *exact_internal) return false;
    for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
      if (core_set.count(seq[k])) return false;
      if (internals.count(seq[k])) return false;
      internals.insert(seq[k]);
    }
  }
  return have == want;
}

inline double least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  double mx = sx / pts.size(), my = sy / pts.size();
  double num = 0, den = 0;
  for (auto& [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  return den == 0 ? 0 : num / den;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI binary, capturing stdout. stderr is dropped.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(TKSUB_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace oracle
