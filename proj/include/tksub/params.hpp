#pragma once

#include <cmath>
#include <map>
#include <string>

#include "tksub/rational.hpp"

namespace tksub {

// Parameter profiles.
//
// "paper" keeps every threshold in its asymptotic form (these only make
// sense on astronomically large hosts; useful for printing and for tests of
// the formulas themselves). "desk" rescales the set-size targets so the
// construction is runnable on graphs with average degree in the single
// digits, while keeping the same shape: core counts proportional to d,
// first shells of size ~d/2, second and third shells about half of their
// maximum capacity so trimming always has slack.
enum class Profile { paper, desk };

struct ResolvedParams {
  int ell = 2;              // target clique order for the subdivision
  double d = 0.0;           // average degree (double view)
  double t = 0.0;           // expander scale eps2*d^2
  double m_log = 0.0;       // ln(15n/t)
  double delta = 0.0;       // high-degree cutoff for degree reduction
  double delta_prime = 0.0; // bad-core threshold in the reduced embedding
  double delta_dprime = 0.0;// bad-core threshold in the dense connection
  int s1 = 1, s2 = 1, s3 = 1;
  int s2_prime = 1;  // raw second-shell size before the global trim
  int cap_s2 = 1;  // per-first-shell-vertex pick bound toward the second shell
  int cap_s3 = 1;  // per-second-shell-vertex pick bound toward the third
  int block = 1;   // cores per block in the dense staging
  int diam_budget = 1;
  double dense_threshold = 0.0;  // route dense vs sparse at d >= ln^14 n
  double deg_cut_B = 0.0;        // hub cutoff d^3 for the degree split
  double w_cut = 0.0;            // hub cutoff c0*d^2 for sparsification
  double Ccap = 1.0, Cprime = 1.0, Kcap = 1.0;
  double p_sample = 1.0;
  int retries = 20;
  int hd_s1 = 1, hd_s2 = 1, hd_cap = 1;  // targets for the high-degree-core embedding
  int drc_ell = 2;                       // target order for the 3-subdivision route
};

struct ParamSet {
  Profile profile = Profile::desk;
  double eps1 = 0.05;
  double eps2 = 0.2;
  int retries = 20;
  std::map<std::string, double> overrides;

  static ParamSet make(Profile p) {
    ParamSet ps;
    ps.profile = p;
    return ps;
  }

  double get(const std::string& key, double fallback) const {
    auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
  }

  ResolvedParams resolve(long long n, const Rat& avg_degree) const {
    ResolvedParams r;
    double d = avg_degree.to_double();
    r.d = d;
    double eps1v = get("eps1", eps1);
    double eps2v = get("eps2", eps2);
    r.t = get("t", std::max(1e-6, eps2v * d * d));
    double ratio = 15.0 * static_cast<double>(n) / r.t;
    r.m_log = ratio > 1.0 ? std::log(ratio) : 0.0;
    double ln_n = n > 1 ? std::log(static_cast<double>(n)) : 1.0;

    auto floor_pos = [](double x) { return static_cast<long long>(std::floor(x)); };
    auto clamp_int = [](long long x, long long lo, long long hi) {
      return static_cast<int>(std::max(lo, std::min(hi, x)));
    };

    bool desk = profile == Profile::desk;
    double c_core = get("c", desk ? 1.0 : 1.0 / 24000.0);
    r.ell = clamp_int(floor_pos(get("ell", std::max(desk ? 2.0 : 0.0, c_core * d))), desk ? 2 : 0,
                      1 << 20);

    r.delta = get("delta", d * std::pow(r.m_log, 8) / 600.0);
    r.delta_prime = get("delta_prime", d * std::pow(r.m_log, 4));
    r.delta_dprime = get("delta_dprime", d * std::pow(ln_n, 13));

    if (desk) {
      r.s1 = clamp_int(floor_pos(get("s1", std::max(2.0, std::floor(d / 2)))), 1, 1 << 20);
      r.cap_s2 = clamp_int(floor_pos(get("cap_s2", std::max(1.0, std::floor(d / 2)))), 1, 1 << 20);
      r.s2 = clamp_int(floor_pos(get("s2", std::max(2.0, std::floor(r.s1 * r.cap_s2 / 2.0)))), 1,
                       1 << 20);
      r.cap_s3 = clamp_int(floor_pos(get("cap_s3", std::max(1.0, std::floor(d / 2)))), 1, 1 << 20);
      r.s3 = clamp_int(floor_pos(get("s3", std::max(2.0, std::floor(r.s2 * r.cap_s3 / 2.0)))), 1,
                       1 << 20);
      r.s2_prime = clamp_int(floor_pos(get("s2_prime", r.s1 * static_cast<double>(r.cap_s2))), 1,
                             1 << 20);
      r.block = clamp_int(floor_pos(get("b", 2)), 1, 1 << 20);
    } else {
      r.s1 = clamp_int(floor_pos(get("s1", d / 2)), 1, 1 << 20);
      r.cap_s2 = clamp_int(floor_pos(get("cap_s2", std::max(1.0, d / 4 - 1))), 1, 1 << 20);
      r.s2 = clamp_int(floor_pos(get("s2", d * d / 10)), 1, 1 << 20);
      r.cap_s3 = clamp_int(floor_pos(get("cap_s3", std::max(1.0, d / 4 - 1))), 1, 1 << 20);
      r.s3 = clamp_int(floor_pos(get("s3", d * d * d / 50)), 1, 1 << 20);
      r.s2_prime =
          clamp_int(floor_pos(get("s2_prime", std::max(1.0, d * d / 8 - d / 2))), 1, 1 << 20);
      r.block = clamp_int(floor_pos(get("b", std::max(1.0, d / std::pow(ln_n, 9)))), 1, 1 << 20);
    }

    double diam = ratio > 1.0 ? (2.0 / eps1v) * std::pow(std::log(ratio), 3) : 1.0;
    r.diam_budget = clamp_int(static_cast<long long>(std::ceil(get("budget", diam))), 0,
                              std::max(1LL, n));
    r.dense_threshold = get("dense_threshold", std::pow(ln_n, 14));
    r.deg_cut_B = get("deg_cut", d * d * d);
    double c0 = get("c0", desk ? 1.0 : 1.0 / 1000.0);
    r.w_cut = std::max(1.0, c0 * d * d);
    r.Ccap = get("C", desk ? 4.0 : 100.0);
    r.Cprime = get("Cprime", desk ? 1.0 : 10.0);
    r.Kcap = get("K", desk ? 8.0 : 1000.0);
    r.p_sample = std::min(1.0, get("p", d > 0 ? r.Ccap / d : 1.0));
    r.retries = clamp_int(static_cast<long long>(get("retries", retries)), 1, 1 << 20);

    r.hd_s1 = clamp_int(floor_pos(get("hd_s1", std::max(1.0, r.delta / 2))), 1, 1 << 20);
    r.hd_s2 = clamp_int(floor_pos(get("hd_s2", std::max(1.0, d * r.delta / 5))), 1, 1 << 20);
    r.hd_cap = clamp_int(floor_pos(get("hd_cap", std::max(1.0, d / 2))), 1, 1 << 20);

    double sq = std::sqrt(std::max(1.0, static_cast<double>(n)));
    r.drc_ell = clamp_int(floor_pos(get("drc_ell", std::max(2.0, sq / 2.0))), 2, 1 << 20);
    return r;
  }
};

}  // namespace tksub
