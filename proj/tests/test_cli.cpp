#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "tksub/certificate.hpp"
#include "tksub/graph_io.hpp"
#include "tksub/report.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using tksub::json;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tksub_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string where(const std::string& name) { return (work_dir() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  REQUIRE(os.good());
  os << body;
}

// the json blob starts after the edge list on mixed-output subcommands
json tail_json(const std::string& out) {
  auto pos = out.find('{');
  REQUIRE(pos != std::string::npos);
  return json::parse(out.substr(pos));
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

int field_count(const std::string& csv_line) {
  return 1 + static_cast<int>(std::count(csv_line.begin(), csv_line.end(), ','));
}

// tests can run filtered, so every fixture file is created on first demand
std::string gq3_host() {
  std::string host = where("gq3.txt");
  if (!fs::exists(host))
    REQUIRE(oracle::run_cli("gen --family gq --q 3 --out " + host).exit_code == 0);
  return host;
}

std::string gq3_cert() {
  std::string cert = where("gq3_cert.json");
  if (!fs::exists(cert))
    REQUIRE(oracle::run_cli("find --graph " + gq3_host() + " --out " + cert + " --seed 1")
                .exit_code == 0);
  return cert;
}

std::string pol11_host() {
  std::string host = where("pol11.txt");
  if (!fs::exists(host))
    REQUIRE(oracle::run_cli("gen --family polarity --q 11 --out " + host).exit_code == 0);
  return host;
}

}  // namespace

TEST_CASE("generate, find, verify round trip", "[cli]") {
  std::string host = where("gq3.txt");
  oracle::CliResult gen = oracle::run_cli("gen --family gq --q 3 --out " + host);
  REQUIRE(gen.exit_code == 0);
  CHECK(gen.out.empty());
  tksub::Graph g = tksub::read_graph_file(host);
  CHECK(g.n() == 80);
  CHECK(g.m() == 160);

  std::string cert = where("gq3_cert.json");
  std::string rep = where("gq3_report.json");
  oracle::CliResult fr = oracle::run_cli("find --graph " + host + " --out " + cert +
                                         " --report " + rep + " --seed 1");
  REQUIRE(fr.exit_code == 0);
  CHECK(fr.out.find("outcome ok") != std::string::npos);
  CHECK(fr.out.find("ell ") != std::string::npos);

  json cj = json::parse(slurp(cert));
  tksub::SubdivisionCertificate parsed = tksub::SubdivisionCertificate::from_json(cj);
  CHECK(parsed.ell() >= 2);
  CHECK(tksub::validate(g, parsed).valid);

  json rj = json::parse(slurp(rep));
  REQUIRE(rj.contains("stages"));
  CHECK(rj["mode"] == "auto");
  CHECK(rj["stages"].is_array());
  CHECK(!rj["stages"].empty());

  oracle::CliResult vr = oracle::run_cli("verify --graph " + host + " --cert " + cert);
  REQUIRE(vr.exit_code == 0);
  CHECK(vr.out.find("valid true") != std::string::npos);

  oracle::CliResult vj =
      oracle::run_cli("verify --graph " + host + " --cert " + cert + " --format json");
  REQUIRE(vj.exit_code == 0);
  json vout = json::parse(vj.out);
  CHECK(vout["valid"] == true);
}

TEST_CASE("bad inputs exit with code 1", "[cli]") {
  CHECK(oracle::run_cli("find --graph /nonexistent/missing.txt").exit_code == 1);
  CHECK(oracle::run_cli("gen --family bogus").exit_code == 1);
  CHECK(oracle::run_cli("find --graph " + gq3_host() + " --mode bogus").exit_code == 1);
  std::string junk = where("junk_cert.json");
  spit(junk, "this is not json\n");
  CHECK(oracle::run_cli("verify --graph " + gq3_host() + " --cert " + junk).exit_code == 1);
}

TEST_CASE("tampered certificate is rejected with code 2", "[cli]") {
  std::string host = gq3_host();
  std::string cert = gq3_cert();
  json cj = json::parse(slurp(cert));
  cj["cores"].push_back(9999);  // vertex that does not exist in the host
  std::string bad = where("gq3_cert_bad.json");
  spit(bad, cj.dump(2) + "\n");
  oracle::CliResult vr = oracle::run_cli("verify --graph " + host + " --cert " + bad);
  CHECK(vr.exit_code == 2);
  CHECK(vr.out.find("valid false") != std::string::npos);
  CHECK(vr.out.find("violation") != std::string::npos);
}

TEST_CASE("reduce-only reports without demanding a certificate", "[cli]") {
  oracle::CliResult r = oracle::run_cli("find --graph " + gq3_host() + " --mode reduce-only");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("outcome report-only") != std::string::npos);
}

TEST_CASE("global flags may follow the subcommand", "[cli]") {
  oracle::CliResult r = oracle::run_cli("find --graph " + gq3_host() + " --seed 7 --format json");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["outcome"] == "ok");
  CHECK(out["certificate"].is_object());
  CHECK(out["report"]["stages"].is_array());
}

TEST_CASE("find output is byte identical across reruns", "[cli]") {
  std::string args = "find --graph " + gq3_host() + " --seed 4 --format json";
  oracle::CliResult a = oracle::run_cli(args);
  oracle::CliResult b = oracle::run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);
}

TEST_CASE("bench emits a deterministic csv", "[cli]") {
  std::string args = "bench --family kdd --range 2..3 --seeds 0,1";
  oracle::CliResult a = oracle::run_cli(args);
  REQUIRE(a.exit_code == 0);
  std::vector<std::string> rows = lines_of(a.out);
  REQUIRE(rows.size() == 5);  // header + 2 values x 2 seeds
  CHECK(rows[0] == "family,q_or_d,n,d,mode,ell,ell_over_sqrt_n,ell_over_d,runtime_ms,seed,valid");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(field_count(rows[i]) == 11);
    CHECK(rows[i].substr(0, 4) == "kdd,");
  }
  oracle::CliResult b = oracle::run_cli(args);
  CHECK(a.out == b.out);
}

TEST_CASE("expander subcommand emits the subgraph and a summary", "[cli]") {
  std::string host = where("k33.txt");
  REQUIRE(oracle::run_cli("gen --family kdd --d 3 --copies 1 --out " + host).exit_code == 0);
  std::string edges = where("k33_expander.txt");
  oracle::CliResult r =
      oracle::run_cli("expander --graph " + host + " --certify --out " + edges);
  REQUIRE(r.exit_code == 0);
  json summary = json::parse(r.out);
  CHECK(summary["certified"] == true);
  CHECK(summary["delta"] == 3);
  CHECK(summary["t"].get<double>() == Catch::Approx(1.8));
  tksub::Graph h = tksub::read_graph_file(edges);
  CHECK(h.n() == 6);
  CHECK(h.m() == 9);

  // without --out the edge list precedes the summary on stdout
  oracle::CliResult mixed = oracle::run_cli("expander --graph " + host);
  REQUIRE(mixed.exit_code == 0);
  CHECK(tail_json(mixed.out)["delta"] == 3);
}

TEST_CASE("drc statistics mode reports trials and feasibility", "[cli]") {
  std::string host = pol11_host();
  std::string args = "drc --graph " + host + " --trials 20 --seed 3";
  oracle::CliResult r = oracle::run_cli(args);
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  REQUIRE(out.contains("params"));
  REQUIRE(out.contains("stats"));
  REQUIRE(out.contains("feasible"));
  CHECK(out["stats"]["trials"] == 20);
  CHECK(out["samples"].size() == 20);
  oracle::CliResult again = oracle::run_cli(args);
  CHECK(r.out == again.out);
}

TEST_CASE("drc embedding produces a triple-subdivision certificate", "[cli]") {
  std::string host = pol11_host();
  std::string cert = where("pol11_drc_cert.json");
  std::string args = "drc --graph " + host + " --seed 3 --out " + cert;
  oracle::CliResult r = oracle::run_cli(args);
  oracle::CliResult again = oracle::run_cli(args);
  CHECK(r.exit_code == again.exit_code);
  CHECK(r.out == again.out);
  if (r.exit_code == 0) {
    CHECK(r.out.find("outcome ok") != std::string::npos);
    oracle::CliResult vr = oracle::run_cli("verify --graph " + host + " --cert " + cert +
                                           " --exact-internal 3");
    CHECK(vr.exit_code == 0);
    CHECK(vr.out.find("valid true") != std::string::npos);
  } else {
    CHECK(r.exit_code == 2);  // structured failure, not a crash
  }
}
