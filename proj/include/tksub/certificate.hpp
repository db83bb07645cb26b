#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tksub/graph.hpp"

namespace tksub {

// Witness that a graph contains a topological clique of order ell: `cores`
// are the branch vertices and paths[{u,v}] is the subdivided edge between
// cores u < v. Canonical form: cores ascending, path keys ascending pairs,
// each path written from its smaller core.
struct SubdivisionCertificate {
  std::vector<int> cores;
  std::map<std::pair<int, int>, std::vector<int>> paths;

  int ell() const { return static_cast<int>(cores.size()); }

  static SubdivisionCertificate make(std::vector<int> cores_in,
                                     std::vector<std::vector<int>> path_list) {
    SubdivisionCertificate c;
    c.cores = std::move(cores_in);
    std::sort(c.cores.begin(), c.cores.end());
    c.cores.erase(std::unique(c.cores.begin(), c.cores.end()), c.cores.end());
    for (auto& p : path_list) {
      if (p.size() < 2) throw GraphError("certificate path needs two endpoints");
      int a = p.front(), b = p.back();
      if (a > b) std::reverse(p.begin(), p.end());
      c.paths[{std::min(a, b), std::max(a, b)}] = std::move(p);
    }
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["cores"] = cores;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, seq] : paths)
      arr.push_back(nlohmann::json{{"u", key.first}, {"v", key.second}, {"seq", seq}});
    j["paths"] = arr;
    return j;
  }

  static SubdivisionCertificate from_json(const nlohmann::json& j) {
    SubdivisionCertificate c;
    c.cores = j.at("cores").get<std::vector<int>>();
    for (const auto& e : j.at("paths")) {
      int u = e.at("u").get<int>();
      int v = e.at("v").get<int>();
      auto seq = e.at("seq").get<std::vector<int>>();
      if (c.paths.count({u, v}))
        throw GraphError("duplicate path entry for pair " + std::to_string(u) + "," +
                         std::to_string(v));
      c.paths[{u, v}] = std::move(seq);
    }
    return c;
  }
};

// Thrown by embedders that fall short of their target order. Carries the
// best valid certificate assembled before giving up, so callers can still
// ship a (smaller) verified witness.
struct EmbedFailedError : GraphError {
  SubdivisionCertificate partial;
  std::string reason;  // set-construction | connection | too-many-bad

  EmbedFailedError(SubdivisionCertificate p, std::string r, const std::string& what)
      : GraphError(what), partial(std::move(p)), reason(std::move(r)) {}
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  bool valid = false;
  int ell = 0;
  std::vector<Violation> violations;

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : violations)
      arr.push_back(nlohmann::json{{"kind", v.kind}, {"detail", v.detail}});
    return nlohmann::json{{"valid", valid}, {"ell", ell}, {"violations", arr}};
  }
};

// Full check of a certificate against a host graph. Collects every violation
// instead of stopping at the first, so a bad certificate is diagnosable in
// one pass. exact_internal, when set, additionally requires every path to
// have exactly that many internal vertices.
inline ValidationReport validate(const Graph& g, const SubdivisionCertificate& cert,
                                 std::optional<int> exact_internal = std::nullopt) {
  ValidationReport rep;
  rep.ell = cert.ell();
  auto bad = [&](const std::string& kind, const std::string& detail) {
    rep.violations.push_back({kind, detail});
  };

  std::vector<int> cores = cert.cores;
  if (!std::is_sorted(cores.begin(), cores.end()) ||
      std::adjacent_find(cores.begin(), cores.end()) != cores.end())
    bad("core-list", "cores must be strictly ascending");
  for (int c : cores)
    if (!g.present(c)) bad("core-missing", "core " + std::to_string(c) + " not in graph");

  auto is_core = [&](int v) { return std::binary_search(cores.begin(), cores.end(), v); };

  // expected pair set
  std::map<std::pair<int, int>, bool> seen_pair;
  for (std::size_t i = 0; i < cores.size(); ++i)
    for (std::size_t j = i + 1; j < cores.size(); ++j)
      seen_pair[{cores[i], cores[j]}] = false;

  std::map<int, std::pair<int, int>> internal_owner;  // vertex -> first pair using it
  for (const auto& [key, seq] : cert.paths) {
    std::string pair_name = std::to_string(key.first) + "-" + std::to_string(key.second);
    auto it = seen_pair.find(key);
    if (it == seen_pair.end()) {
      bad("unexpected-pair", "path for " + pair_name + " but these are not two distinct cores");
    } else {
      it->second = true;
    }
    if (seq.size() < 2) {
      bad("short-path", "path " + pair_name + " has fewer than two vertices");
      continue;
    }
    if (seq.front() != key.first || seq.back() != key.second)
      bad("endpoint-mismatch", "path " + pair_name + " runs " + std::to_string(seq.front()) +
                                   ".." + std::to_string(seq.back()));
    std::vector<int> sorted_seq = seq;
    std::sort(sorted_seq.begin(), sorted_seq.end());
    if (std::adjacent_find(sorted_seq.begin(), sorted_seq.end()) != sorted_seq.end())
      bad("repeat-in-path", "path " + pair_name + " repeats a vertex");
    for (std::size_t i = 0; i < seq.size(); ++i) {
      int v = seq[i];
      if (!g.present(v)) {
        bad("vertex-missing", "path " + pair_name + " visits absent vertex " + std::to_string(v));
        continue;
      }
      if (i + 1 < seq.size() && !(g.present(seq[i + 1]) && g.has_edge(v, seq[i + 1])))
        bad("not-an-edge", "path " + pair_name + " uses non-edge " + std::to_string(v) + "-" +
                               std::to_string(seq[i + 1]));
      if (i > 0 && i + 1 < seq.size()) {
        if (is_core(v))
          bad("core-internal", "core " + std::to_string(v) + " is internal to path " + pair_name);
        auto [owner, inserted] = internal_owner.emplace(v, key);
        if (!inserted)
          bad("internal-reuse", "vertex " + std::to_string(v) + " is internal to " + pair_name +
                                    " and to " + std::to_string(owner->second.first) + "-" +
                                    std::to_string(owner->second.second));
      }
    }
    if (exact_internal && static_cast<int>(seq.size()) - 2 != *exact_internal)
      bad("internal-count", "path " + pair_name + " has " +
                                std::to_string(static_cast<int>(seq.size()) - 2) +
                                " internal vertices, want " + std::to_string(*exact_internal));
  }
  for (const auto& [key, found] : seen_pair)
    if (!found)
      bad("missing-path",
          "no path for core pair " + std::to_string(key.first) + "-" + std::to_string(key.second));

  rep.valid = rep.violations.empty();
  return rep;
}

struct MaxTkResult {
  int ell = 0;
  SubdivisionCertificate witness;
};

// Exhaustive maximum topological clique, n <= 9. Core sets are scanned in
// descending size, ascending lexicographic rank; for each set, a backtracking
// search assigns internally disjoint paths to the core pairs. The first
// system found is returned, so results are deterministic.
inline MaxTkResult brute_force_max_tk(const Graph& g, int cap = -1) {
  int n = g.n();
  if (n > 9) throw TooLargeError("brute_force_max_tk handles at most 9 vertices");
  if (n == 0) throw EmptyGraphError("brute_force_max_tk on empty graph");
  const auto& verts = g.vertices();

  // candidate simple paths between two cores with internals disjoint from
  // all cores, as (internal-mask, sequence), shortest first
  auto paths_for_pair = [&](int u, int v, const std::vector<int>& cores) {
    std::vector<std::pair<unsigned, std::vector<int>>> out;
    std::vector<char> forbid(static_cast<std::size_t>(g.universe()), 0);
    for (int c : cores) forbid[static_cast<std::size_t>(c)] = 1;
    // DFS from u over non-core internals
    std::vector<int> path{u};
    std::vector<char> on(static_cast<std::size_t>(g.universe()), 0);
    on[static_cast<std::size_t>(u)] = 1;
    auto rec = [&](auto&& self, int x) -> void {
      for (int w : g.neighbors(x)) {
        if (w == v) {
          std::vector<int> full = path;
          full.push_back(v);
          unsigned mask = 0;
          for (std::size_t i = 1; i + 1 < full.size(); ++i) {
            int pos = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), full[i]) -
                                       verts.begin());
            mask |= 1u << pos;
          }
          out.emplace_back(mask, std::move(full));
          continue;
        }
        if (on[static_cast<std::size_t>(w)] || forbid[static_cast<std::size_t>(w)] ||
            !g.present(w))
          continue;
        on[static_cast<std::size_t>(w)] = 1;
        path.push_back(w);
        self(self, w);
        path.pop_back();
        on[static_cast<std::size_t>(w)] = 0;
      }
    };
    rec(rec, u);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
      return a.second < b.second;
    });
    return out;
  };

  int start = cap > 0 ? std::min(cap, n) : n;
  for (int ell = start; ell >= 1; --ell) {
    std::vector<int> pick(static_cast<std::size_t>(ell));
    // lexicographic combinations of indices into verts
    std::vector<int> idx(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      for (int i = 0; i < ell; ++i)
        pick[static_cast<std::size_t>(i)] = verts[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];

      // try to realize `pick` as cores
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j)
          pairs.emplace_back(pick[static_cast<std::size_t>(i)], pick[static_cast<std::size_t>(j)]);
      std::vector<std::vector<std::pair<unsigned, std::vector<int>>>> cand;
      bool hopeless = false;
      for (auto [u, v] : pairs) {
        cand.push_back(paths_for_pair(u, v, pick));
        if (cand.back().empty()) {
          hopeless = true;
          break;
        }
      }
      std::vector<std::vector<int>> chosen(pairs.size());
      if (!hopeless) {
        auto assign = [&](auto&& self, std::size_t k, unsigned used) -> bool {
          if (k == pairs.size()) return true;
          for (const auto& [mask, seq] : cand[k]) {
            if (mask & used) continue;
            chosen[k] = seq;
            if (self(self, k + 1, used | mask)) return true;
          }
          return false;
        };
        if (assign(assign, 0, 0u)) {
          MaxTkResult res;
          res.ell = ell;
          res.witness = SubdivisionCertificate::make(pick, chosen);
          return res;
        }
      }

      // next combination
      int i = ell - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - ell + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < ell; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  // ell = 1 always succeeds above (no pairs); unreachable
  throw GraphError("brute_force_max_tk: exhausted search space");
}

struct JungCheck {
  int d = 0;
  int max_ell = 0;
  double bound = 0.0;
  bool ok = false;
};

// A disjoint union of K_{d,d} has no topological clique of order sqrt(8d) or
// more; checked exhaustively on one copy (a topological clique is connected).
inline JungCheck jung_bound_check(int d) {
  if (d < 1 || d > 4) throw TooLargeError("jung_bound_check supports d in 1..4");
  Graph::Builder b(2 * d);
  std::vector<Side> sides(static_cast<std::size_t>(2 * d), Side::A);
  for (int i = 0; i < d; ++i) sides[static_cast<std::size_t>(d + i)] = Side::B;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b.add_edge(i, d + j);
  b.set_sides(std::move(sides));
  Graph kdd = b.build();
  JungCheck out;
  out.d = d;
  out.max_ell = brute_force_max_tk(kdd).ell;
  out.bound = std::sqrt(8.0 * d);
  out.ok = out.max_ell < out.bound;
  return out;
}

}  // namespace tksub
