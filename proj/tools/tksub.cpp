#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tksub/bench.hpp"
#include "tksub/certificate.hpp"
#include "tksub/drc.hpp"
#include "tksub/expander.hpp"
#include "tksub/generators.hpp"
#include "tksub/graph_io.hpp"
#include "tksub/pipeline.hpp"

namespace {

using tksub::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitNoCertificate = 2;
constexpr int kExitBreach = 3;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCertificate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw BadInput("cannot open for writing: " + path);
  os << body;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw BadInput("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

tksub::Graph load_graph(const std::string& path) {
  try {
    return tksub::read_graph_file(path);
  } catch (const tksub::GraphError& e) {
    throw BadInput(e.what());
  }
}

// inline JSON object, or a path to a file holding one
json parse_params_arg(const std::string& arg) {
  std::string body = arg;
  if (!arg.empty() && arg[0] != '{') body = slurp(arg);
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw BadInput("--params must be a JSON object");
  return j;
}

tksub::ParamSet make_params(const std::string& params_arg) {
  tksub::ParamSet ps;
  if (params_arg.empty()) return ps;
  json j = parse_params_arg(params_arg);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "profile") {
      if (!it.value().is_string()) throw BadInput("profile must be a string");
      std::string name = it.value().get<std::string>();
      if (name == "desk") ps.profile = tksub::Profile::desk;
      else if (name == "paper") ps.profile = tksub::Profile::paper;
      else throw BadInput("profile must be 'desk' or 'paper'");
      continue;
    }
    if (!it.value().is_number()) throw BadInput("override '" + it.key() + "' must be numeric");
    double v = it.value().get<double>();
    if (it.key() == "eps1") ps.eps1 = v;
    else if (it.key() == "eps2") ps.eps2 = v;
    else if (it.key() == "retries") ps.retries = static_cast<int>(v);
    ps.overrides[it.key()] = v;
  }
  return ps;
}

std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) std::cout << body;
  else write_text_file(out_path, body);
}

struct GenArgs {
  std::string family = "polarity";
  int q = 3;
  int d = 2;
  int copies = 3;
  int na = 8, nb = 8;
  double p = 0.5;
};

int run_gen(const GenArgs& a, std::uint64_t seed, const std::string& out_path) {
  tksub::Graph g = [&] {
    try {
      if (a.family == "polarity") return tksub::polarity_graph(a.q);
      if (a.family == "projective") return tksub::projective_incidence(a.q);
      if (a.family == "gq") return tksub::gq_incidence(a.q);
      if (a.family == "kdd") return tksub::disjoint_kdd(a.d, a.copies);
      if (a.family == "random") return tksub::random_bipartite(a.na, a.nb, a.p, seed);
      throw BadInput("unknown family: " + a.family);
    } catch (const tksub::GraphError& e) {
      throw BadInput(e.what());
    }
  }();
  emit(tksub::edge_list_string(g), out_path);
  return kExitOk;
}

int run_find(const std::string& graph_path, const std::string& mode,
             const std::string& params_arg, std::uint64_t seed, const std::string& format,
             const std::string& out_path, const std::string& report_path) {
  tksub::Graph g = load_graph(graph_path);
  tksub::ParamSet ps = make_params(params_arg);
  tksub::FindResult res = tksub::find_subdivision(g, mode, ps, seed);

  std::string outcome = res.has_cert ? (res.partial ? "partial" : "ok")
                                     : (mode == "reduce-only" ? "report-only" : "failed");
  json cert_json = res.has_cert ? res.cert.to_json() : json(nullptr);
  if (!out_path.empty()) write_text_file(out_path, cert_json.dump(2) + "\n");
  if (!report_path.empty()) write_text_file(report_path, res.report.to_json().dump(2) + "\n");

  if (format == "json") {
    json out{{"outcome", outcome},
             {"ell", res.has_cert ? res.cert.ell() : 0},
             {"reason", res.fail_reason},
             {"certificate", cert_json},
             {"report", res.report.to_json()}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "outcome " << outcome << "\n";
    std::cout << "ell " << (res.has_cert ? res.cert.ell() : 0) << "\n";
    if (!res.fail_reason.empty()) std::cout << "reason " << res.fail_reason << "\n";
    if (out_path.empty() && res.has_cert) std::cout << cert_json.dump(2) << "\n";
  }
  if (!res.has_cert && mode != "reduce-only")
    throw NoCertificate(res.fail_reason.empty() ? "no certificate" : res.fail_reason);
  return kExitOk;
}

int run_verify(const std::string& graph_path, const std::string& cert_path, int exact_internal,
               const std::string& format) {
  tksub::Graph g = load_graph(graph_path);
  json cj = json::parse(slurp(cert_path), nullptr, false);
  if (cj.is_discarded()) throw BadInput("certificate file is not JSON: " + cert_path);
  tksub::SubdivisionCertificate cert = [&] {
    try {
      return tksub::SubdivisionCertificate::from_json(cj);
    } catch (const tksub::GraphError& e) {
      throw BadInput(e.what());
    }
  }();
  std::optional<int> exact;
  if (exact_internal >= 0) exact = exact_internal;
  tksub::ValidationReport vr = tksub::validate(g, cert, exact);
  if (format == "json") {
    std::cout << vr.to_json().dump(2) << "\n";
  } else {
    std::cout << "valid " << (vr.valid ? "true" : "false") << "\n";
    std::cout << "ell " << vr.ell << "\n";
    for (const auto& v : vr.violations)
      std::cout << "violation " << v.kind << " " << v.detail << "\n";
  }
  if (!vr.valid) throw NoCertificate("certificate invalid");
  return kExitOk;
}

int run_expander(const std::string& graph_path, double eps1, double eps2, int effort,
                 bool certify, std::uint64_t seed, const std::string& format,
                 const std::string& out_path) {
  tksub::Graph g = load_graph(graph_path);
  tksub::ExtractResult ex = tksub::extract_expander(g, eps1, eps2, effort, seed);
  if (certify) {
    if (ex.h.n() > 18)
      throw BadInput("--certify needs at most 18 vertices, extracted " +
                     std::to_string(ex.h.n()));
    ex.certified = !tksub::certify_exhaustive(ex.h, eps1, ex.t).has_value();
  }
  json rep{{"d", ex.h.n() > 0 ? tksub::Rat(2 * ex.h.m(), ex.h.n()).str() : "0"},
           {"delta", ex.h.min_degree()},
           {"t", ex.t},
           {"certified", ex.certified}};
  std::string edges = tksub::edge_list_string(ex.h);
  if (out_path.empty()) {
    std::cout << edges;
    std::cout << rep.dump(2) << "\n";
  } else {
    write_text_file(out_path, edges);
    std::cout << rep.dump(2) << "\n";
  }
  (void)format;
  return kExitOk;
}

int run_drc(const std::string& graph_path, double c_arg, int ell, int trials,
            const std::string& params_arg, std::uint64_t seed, const std::string& format,
            const std::string& out_path, const std::string& report_path) {
  tksub::Graph g = load_graph(graph_path);
  tksub::ParamSet ps = make_params(params_arg);
  tksub::RunReport report;
  report.mode = "drc";
  report.overrides = tksub::RunReport::overrides_json(ps);

  if (trials > 0) {  // Monte-Carlo statistics only
    tksub::Graph gb = [&] {
      try {
        return tksub::balance_bipartite(g, tksub::Rng::derive(seed, 3), ps.retries);
      } catch (const tksub::BalanceFailedError& e) {
        throw NoCertificate(e.what());
      }
    }();
    double c = c_arg > 0 ? c_arg : tksub::measured_density(gb);
    tksub::DrcParams p = tksub::desk_params(c, gb.n());
    tksub::DrcMcStats st = tksub::drc_mc(gb, p, trials, seed);
    json samples = json::array();
    for (long long s : st.samples) samples.push_back(s);
    json out{{"params", p.to_json()},
             {"stats", st.to_json()},
             {"samples", samples},
             {"feasible", tksub::drc_feasible(p, gb.n()).to_json()}};
    emit(out.dump(2) + "\n", out_path);
    return kExitOk;
  }

  tksub::SubdivisionCertificate cert = [&] {
    try {
      if (c_arg > 0) {  // explicit density: skip the measuring step
        tksub::Graph gb = tksub::balance_bipartite(g, tksub::Rng::derive(seed, 3), ps.retries,
                                                   &report);
        tksub::DrcParams p = tksub::desk_params(c_arg, gb.n());
        tksub::VertexSet u = tksub::drc_select(gb, p, tksub::Rng::derive(seed, 5), ps.retries,
                                               &report);
        int target = ell > 0 ? ell : std::min<int>(static_cast<int>(u.size()), 8);
        for (int k = std::min<int>(target, static_cast<int>(u.size())); k >= 2; --k) {
          try {
            return tksub::embed_3subdivision(gb, u, k, &report);
          } catch (const tksub::NoConnectorError&) {
          }
        }
        std::vector<int> first{u.ids().front()};
        throw tksub::EmbedFailedError(
            tksub::SubdivisionCertificate::make(std::move(first), {}), "connection",
            "no pair of candidate cores could be linked");
      }
      int target = ell > 0 ? ell : ps.resolve(g.n(), g.avg_degree()).drc_ell;
      return tksub::drc_pipeline(g, ps, target, seed, &report);
    } catch (const tksub::EmbedFailedError& e) {
      if (e.partial.ell() >= 1 && tksub::validate(g, e.partial).valid) return e.partial;
      throw NoCertificate(e.reason);
    } catch (const tksub::GraphError& e) {
      throw NoCertificate(e.what());
    }
  }();

  tksub::ValidationReport vr = tksub::validate(g, cert, 3);
  if (!vr.valid) throw tksub::InternalBreachError("drc certificate failed validation");
  json cj = cert.to_json();
  if (!report_path.empty()) write_text_file(report_path, report.to_json().dump(2) + "\n");
  if (format == "json") {
    json out{{"outcome", "ok"}, {"ell", cert.ell()}, {"certificate", cj},
             {"report", report.to_json()}};
    emit(out.dump(2) + "\n", out_path);
  } else {
    if (!out_path.empty()) write_text_file(out_path, cj.dump(2) + "\n");
    std::cout << "outcome ok\n";
    std::cout << "ell " << cert.ell() << "\n";
    if (out_path.empty()) std::cout << cj.dump(2) << "\n";
  }
  return kExitOk;
}

int run_bench(const std::string& family, const std::string& range, const std::string& mode,
              const std::string& seeds, const std::string& params_arg, bool timing,
              const std::string& out_path) {
  tksub::ParamSet ps = make_params(params_arg);
  std::vector<tksub::BenchRow> rows =
      tksub::run_experiment(family, parse_range(range), mode, parse_seeds(seeds), ps, timing);
  emit(tksub::bench_csv(rows), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clique-subdivision certificates in C4-free and C6-free graphs"};
  app.fallthrough();
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out_path;
  app.add_option("--seed", seed, "rng seed")->capture_default_str();
  app.add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the main artifact here instead of stdout");
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate a host graph");
  c_gen->fallthrough();
  c_gen->add_option("--family", gen.family, "polarity|projective|gq|kdd|random")->required();
  c_gen->add_option("--q", gen.q, "field order");
  c_gen->add_option("--d", gen.d, "kdd side degree");
  c_gen->add_option("--copies", gen.copies, "kdd copies");
  c_gen->add_option("--na", gen.na, "random: left side");
  c_gen->add_option("--nb", gen.nb, "random: right side");
  c_gen->add_option("--p", gen.p, "random: edge probability");

  std::string graph_path, mode = "auto", params_arg, report_path, cert_path;
  auto* c_find = app.add_subcommand("find", "construct a subdivision certificate");
  c_find->fallthrough();
  c_find->add_option("--graph", graph_path, "edge-list file")->required();
  c_find->add_option("--mode", mode, "auto|dense|sparse|drc|reduce-only")
      ->check(CLI::IsMember({"auto", "dense", "sparse", "drc", "reduce-only"}));
  c_find->add_option("--params", params_arg, "JSON overrides (inline or a file path)");
  c_find->add_option("--report", report_path, "write the run report here");

  int exact_internal = -1;
  auto* c_verify = app.add_subcommand("verify", "validate a certificate against a graph");
  c_verify->fallthrough();
  c_verify->add_option("--graph", graph_path, "edge-list file")->required();
  c_verify->add_option("--cert", cert_path, "certificate JSON file")->required();
  c_verify->add_option("--exact-internal", exact_internal,
                       "require exactly this many internal vertices per path");

  double eps1 = 0.05, eps2 = 0.2;
  int effort = 20;
  bool certify = false;
  auto* c_exp = app.add_subcommand("expander", "extract an expanding subgraph");
  c_exp->fallthrough();
  c_exp->add_option("--graph", graph_path, "edge-list file")->required();
  c_exp->add_option("--eps1", eps1, "expansion constant");
  c_exp->add_option("--eps2", eps2, "scale constant for t");
  c_exp->add_option("--effort", effort, "violation-search attempts");
  c_exp->add_flag("--certify", certify, "force the exhaustive check (n <= 18)");

  double drc_c = 0;
  int drc_ell = 0, drc_trials = 0;
  auto* c_drc = app.add_subcommand("drc", "dependent-random-choice embedding or statistics");
  c_drc->fallthrough();
  c_drc->add_option("--graph", graph_path, "edge-list file")->required();
  c_drc->add_option("--c", drc_c, "density parameter; measured from the graph when absent");
  c_drc->add_option("--ell", drc_ell, "target clique order");
  c_drc->add_option("--trials", drc_trials, "Monte-Carlo trials (statistics mode when > 0)");
  c_drc->add_option("--params", params_arg, "JSON overrides (inline or a file path)");
  c_drc->add_option("--report", report_path, "write the run report here");

  std::string family, range, seeds_arg = "0";
  bool timing = false;
  auto* c_bench = app.add_subcommand("bench", "sweep instances into a CSV");
  c_bench->fallthrough();
  c_bench->add_option("--family", family, "polarity|projective|gq|kdd|random")->required();
  c_bench->add_option("--range", range, "values, e.g. 2..5 or 2,3,5")->required();
  c_bench->add_option("--mode", mode, "engine mode");
  c_bench->add_option("--seeds", seeds_arg, "comma-separated seeds")->capture_default_str();
  c_bench->add_flag("--timing", timing, "measure wall-clock per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (c_gen->parsed()) return run_gen(gen, seed, out_path);
    if (c_find->parsed())
      return run_find(graph_path, mode, params_arg, seed, format, out_path, report_path);
    if (c_verify->parsed()) return run_verify(graph_path, cert_path, exact_internal, format);
    if (c_exp->parsed())
      return run_expander(graph_path, eps1, eps2, effort, certify, seed, format, out_path);
    if (c_drc->parsed())
      return run_drc(graph_path, drc_c, drc_ell, drc_trials, params_arg, seed, format, out_path,
                     report_path);
    if (c_bench->parsed())
      return run_bench(family, range, mode, seeds_arg, params_arg, timing, out_path);
    std::cerr << "no subcommand\n";
    return kExitBadInput;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NoCertificate& e) {
    std::cerr << "no certificate: " << e.what() << "\n";
    return kExitNoCertificate;
  } catch (const tksub::InternalBreachError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kExitBreach;
  } catch (const tksub::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const tksub::GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitBreach;
  }
}
