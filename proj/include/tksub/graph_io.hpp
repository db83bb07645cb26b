#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tksub/graph.hpp"

namespace tksub {

struct ParseError : GraphError {
  explicit ParseError(const std::string& what) : GraphError(what) {}
};

// Text edge list. Header "n m" (plus token "bipartite" when side labels are
// present, in which case a line of n labels A/B follows), then m lines
// "u v" with 0 <= u < v < n. Written edges are ascending, so output is
// canonical for a given graph.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.universe() << " " << g.m();
  if (g.has_sides()) os << " bipartite";
  os << "\n";
  if (g.has_sides()) {
    for (int v = 0; v < g.universe(); ++v) {
      if (v) os << " ";
      os << (g.present(v) && g.side(v) == Side::B ? "B" : "A");
    }
    os << "\n";
  }
  for (int u : g.vertices())
    for (int v : g.neighbors(u))
      if (u < v) os << u << " " << v << "\n";
}

inline std::string edge_list_string(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

inline Graph read_edge_list(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("missing header line");
  std::istringstream hs(header);
  long long n = -1, m = -1;
  std::string tok;
  if (!(hs >> n >> m)) throw ParseError("header must start with 'n m'");
  bool bipartite = false;
  if (hs >> tok) {
    if (tok != "bipartite") throw ParseError("unknown header token '" + tok + "'");
    bipartite = true;
    if (hs >> tok) throw ParseError("trailing token after 'bipartite'");
  }
  if (n < 0 || m < 0) throw ParseError("negative counts in header");
  if (n > 50'000'000) throw ParseError("vertex count out of supported range");

  Graph::Builder b(static_cast<int>(n));
  if (bipartite) {
    std::string labline;
    if (!std::getline(is, labline)) throw ParseError("missing side label line");
    std::istringstream ls(labline);
    std::vector<Side> sides;
    sides.reserve(static_cast<std::size_t>(n));
    std::string lab;
    while (ls >> lab) {
      if (lab == "A") sides.push_back(Side::A);
      else if (lab == "B") sides.push_back(Side::B);
      else throw ParseError("side label must be A or B, got '" + lab + "'");
    }
    if (static_cast<long long>(sides.size()) != n)
      throw ParseError("expected " + std::to_string(n) + " side labels, got " +
                       std::to_string(sides.size()));
    b.set_sides(std::move(sides));
  }

  long long seen = 0;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream es(line);
    long long u, v;
    if (!(es >> u)) continue;  // blank line
    if (!(es >> v)) throw ParseError("edge line needs two endpoints: '" + line + "'");
    std::string extra;
    if (es >> extra) throw ParseError("trailing token on edge line: '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("edge endpoint out of range: '" + line + "'");
    if (u >= v) throw ParseError("edges must satisfy u < v: '" + line + "'");
    b.add_edge(static_cast<int>(u), static_cast<int>(v));
    ++seen;
  }
  if (seen != m)
    throw ParseError("header promised " + std::to_string(m) + " edges, found " +
                     std::to_string(seen));
  try {
    return b.build();
  } catch (const InvalidEdgeError& e) {
    throw ParseError(e.what());
  } catch (const NotBipartiteError& e) {
    throw ParseError(e.what());
  }
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return read_edge_list(in);
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  write_edge_list(out, g);
}

}  // namespace tksub
