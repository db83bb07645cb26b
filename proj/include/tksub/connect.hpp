#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tksub/certificate.hpp"
#include "tksub/graph.hpp"
#include "tksub/graph_ops.hpp"
#include "tksub/report.hpp"

namespace tksub {

// One core vertex with its shells. parent holds the tree edge toward the
// core for every shell vertex (s1 -> core, s2 -> s1, s3 -> s2), so a path
// from the core to any shell vertex can be reconstructed by chasing parents.
struct CorePlan {
  int core = -1;
  VertexSet s1, s2, s3;
  std::map<int, int> parent;
  int block = 0;
  enum class Status { active, bad, discarded };
  Status status = Status::active;
};

struct ConnectOutcome {
  SubdivisionCertificate cert;  // over the surviving cores
  int survivors = 0;
  int bad_discards = 0;         // cores dropped for shell over-consumption
  int fail_discards = 0;        // cores dropped because a pair had no path
  json discard_log = json::array();
};

namespace detail {

// Drop repeated vertices from a walk by splicing out the loop between the
// two occurrences. The result is a simple path on a subset of the walk.
inline std::vector<int> squeeze_walk(const std::vector<int>& walk) {
  std::vector<int> out;
  std::map<int, std::size_t> pos;
  for (int v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      while (out.size() > it->second + 1) {
        pos.erase(out.back());
        out.pop_back();
      }
      continue;
    }
    pos[v] = out.size();
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// Connects every pair of active cores, lexicographically by plan index, with
// a path of length <= budget running from one core's still-available shell
// to the other's, avoiding every third core's protected lower shell. A core
// is discarded the moment more than bad_threshold of its watched shell
// (watch_level 1 or 2) has been consumed, or when one of its pairs cannot be
// connected (of the failing pair, the core with the smaller available set
// goes, ties to the higher index). Discarded cores keep nothing: their
// finished paths are dropped too.
inline ConnectOutcome connect_cores(const Graph& g, std::vector<CorePlan>& plans, int watch_level,
                                    double bad_threshold, int budget) {
  std::size_t np = plans.size();
  std::vector<char> used(static_cast<std::size_t>(g.universe()), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<int>> paths;
  ConnectOutcome out;

  std::vector<VertexSet> b1(np);  // {core} + s1, the protected zone per core
  for (std::size_t i = 0; i < np; ++i) {
    VertexSet b = plans[i].s1;
    b.insert(plans[i].core);
    b1[i] = std::move(b);
  }

  auto active = [&](std::size_t i) { return plans[i].status == CorePlan::Status::active; };

  auto discard = [&](std::size_t i, const std::string& cause) {
    plans[i].status = cause == "bad" ? CorePlan::Status::bad : CorePlan::Status::discarded;
    for (auto it = paths.begin(); it != paths.end();) {
      if (it->first.first == i || it->first.second == i) it = paths.erase(it);
      else ++it;
    }
    out.discard_log.push_back(json{{"core", plans[i].core}, {"cause", cause}});
    if (cause == "bad") ++out.bad_discards;
    else ++out.fail_discards;
  };

  // shell vertex available iff unused and its whole parent chain is unused
  auto available_set = [&](std::size_t i) {
    VertexSet avail;
    avail.insert(plans[i].core);
    auto chain_ok = [&](int v) {
      while (v != plans[i].core) {
        if (used[static_cast<std::size_t>(v)]) return false;
        auto it = plans[i].parent.find(v);
        if (it == plans[i].parent.end()) return false;
        v = it->second;
      }
      return true;
    };
    for (const VertexSet* shell : {&plans[i].s1, &plans[i].s2, &plans[i].s3})
      for (int v : *shell)
        if (chain_ok(v)) avail.insert(v);
    return avail;
  };

  auto consumed_in = [&](const VertexSet& shell) {
    int c = 0;
    for (int v : shell)
      if (used[static_cast<std::size_t>(v)]) ++c;
    return c;
  };

  auto chain_to_core = [&](std::size_t i, int v) {
    std::vector<int> chain{v};
    while (v != plans[i].core) {
      v = plans[i].parent.at(v);
      chain.push_back(v);
    }
    return chain;  // v .. core
  };

  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i + 1; j < np; ++j) {
      if (!active(i) || !active(j)) continue;

      VertexSet forbidden;
      for (std::size_t p = 0; p < np; ++p)
        if (p != i && p != j) forbidden = forbidden.unioned(b1[p]);
      {
        std::vector<int> u;
        for (int v : g.vertices())
          if (used[static_cast<std::size_t>(v)]) u.push_back(v);
        forbidden = forbidden.unioned(VertexSet(std::move(u)));
      }

      VertexSet from = available_set(i).minus(forbidden);
      VertexSet to = available_set(j).minus(forbidden);

      std::optional<Path> found;
      if (!from.empty() && !to.empty())
        found = shortest_path_between_sets(g, from, to, forbidden, budget);
      if (!found) {
        std::size_t victim = from.size() < to.size()   ? i
                             : to.size() < from.size() ? j
                                                       : j;  // tie: higher index
        discard(victim, "connection");
        continue;
      }

      std::vector<int> walk;
      {
        auto ci = chain_to_core(i, found->verts.front());  // endpoint .. core_i
        std::reverse(ci.begin(), ci.end());
        walk = std::move(ci);
        walk.insert(walk.end(), found->verts.begin() + 1, found->verts.end());
        auto cj = chain_to_core(j, found->verts.back());  // endpoint .. core_j
        walk.insert(walk.end(), cj.begin() + 1, cj.end());
      }
      std::vector<int> seq = detail::squeeze_walk(walk);
      for (std::size_t k = 1; k + 1 < seq.size(); ++k)
        used[static_cast<std::size_t>(seq[k])] = 1;
      paths[{i, j}] = std::move(seq);

      for (std::size_t p = 0; p < np; ++p) {
        if (!active(p)) continue;
        const VertexSet& watched = watch_level == 1 ? plans[p].s1 : plans[p].s2;
        if (consumed_in(watched) > bad_threshold) discard(p, "bad");
      }
    }
  }

  std::vector<int> cores;
  std::vector<std::vector<int>> survivors_paths;
  for (std::size_t i = 0; i < np; ++i)
    if (active(i)) cores.push_back(plans[i].core);
  for (auto& [key, seq] : paths)
    if (active(key.first) && active(key.second)) survivors_paths.push_back(seq);
  out.cert = SubdivisionCertificate::make(std::move(cores), std::move(survivors_paths));
  out.survivors = out.cert.ell();
  return out;
}

}  // namespace tksub
