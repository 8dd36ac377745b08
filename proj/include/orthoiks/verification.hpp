#pragma once

// Acceptance checks shared by the acceptance test binary and `orthoiks verify`.

#include "orthoiks/atlas.hpp"
#include "orthoiks/classify.hpp"
#include "orthoiks/geometry.hpp"
#include "orthoiks/ik.hpp"
#include "orthoiks/workspace.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace orthoiks {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool full = true;             // quick mode thins the scans and random samples
  double threshold_bias = 0.0;  // fault injection into the closed form
  unsigned threads = 0;
  std::uint64_t seed = 20240611;
};

namespace detail {

inline std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

inline ClassifyOptions biased(const VerifyOptions& o) {
  ClassifyOptions c;
  c.threshold_bias = o.threshold_bias;
  return c;
}

inline CriterionResult check_reference_designs(const VerifyOptions& o) {
  struct Case {
    DhParams p;
    Verdict expected;
  };
  const std::vector<Case> cases = {{DhParams(1, 0.5, 0.15, 0.21), Verdict::Binary},
                                   {DhParams(1, 0.5, 0.4, 0.1), Verdict::Binary},
                                   {DhParams(1, 0.5, 0.45, 0.4), Verdict::Quaternary}};
  const auto t0 = std::chrono::steady_clock::now();
  int matched = 0;
  std::string misses;
  for (const auto& c : cases) {
    const Verdict cf = classify(c.p, biased(o)).verdict;
    const Verdict cs = numerical_classify(c.p);
    const Verdict gi = grid_iks_oracle(c.p) >= 4 ? Verdict::Quaternary : Verdict::Binary;
    if (cf == c.expected && cs == c.expected && gi == c.expected) {
      ++matched;
    } else {
      misses += fmt(" (a2=%g,a3=%g,d2=%g: closed_form=%s cusp_scan=%s grid_iks=%s)", c.p.a2(),
                    c.p.a3(), c.p.d2(), std::string(to_string(cf)).c_str(),
                    std::string(to_string(cs)).c_str(), std::string(to_string(gi)).c_str());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CriterionResult r{1, "reference designs: binary, binary, quaternary under all three oracles"};
  r.pass = matched == 3 && secs < 10.0;
  r.detail = fmt("%d/3 matched in %.2f s (limit 10 s)", matched, secs) + misses;
  return r;
}

inline CriterionResult check_cusps_and_regions(const VerifyOptions&) {
  const DhParams p(1, 2, 1.5, 1);
  const auto f = find_features(p);
  const int cusps = count_features(f, FeatureKind::Cusp);
  const int nodes = count_features(f, FeatureKind::Node);
  int inner = -1, outer = -1;
  for (const auto& probe : region_probes(p)) {
    if (probe.inside_ws1 && probe.inside_ws2) inner = count_iks(p, probe.point);
    if (!probe.inside_ws1 && probe.inside_ws2) outer = count_iks(p, probe.point);
  }
  CriterionResult r{2, "(1, 2, 1.5, 1): 4 cusps, 0 nodes, inner region 4 IKS, outer region 2"};
  r.pass = cusps == 4 && nodes == 0 && inner == 4 && outer == 2;
  r.detail = fmt("cusps=%d nodes=%d inner=%d outer=%d", cusps, nodes, inner, outer);
  return r;
}

inline CriterionResult check_a3_sweep(const VerifyOptions& o) {
  const std::vector<double> a3s = {0.2, 0.3, 0.4, 0.5, 0.7, 0.9, 1.1};
  std::vector<Verdict> verdicts;
  bool oracles_agree = true;
  int nodes_09 = -1, nodes_11 = -1;
  std::string row;
  for (double a3 : a3s) {
    const DhParams p(1, 1.5, a3, 0.5);
    const Verdict cf = classify(p, biased(o)).verdict;
    const Verdict cs = numerical_classify(p);
    const Verdict gi = grid_iks_oracle(p) >= 4 ? Verdict::Quaternary : Verdict::Binary;
    oracles_agree = oracles_agree && cf == cs && cs == gi;
    verdicts.push_back(cf);
    const int nodes = count_features(find_features(p), FeatureKind::Node);
    if (a3 == 0.9) nodes_09 = nodes;
    if (a3 == 1.1) nodes_11 = nodes;
    row += fmt(" %g:%c", a3, cf == Verdict::Binary ? 'B' : 'Q');
  }
  int changes = 0;
  for (std::size_t i = 1; i < verdicts.size(); ++i) changes += verdicts[i] != verdicts[i - 1];
  const double thr = a3_threshold(1, 1.5, 0.5).threshold_low.value_or(-1.0);
  CriterionResult r{3, "a3 sweep at a2=1.5, d2=0.5: one binary-to-quaternary change"};
  r.pass = oracles_agree && changes == 1 && verdicts.front() == Verdict::Binary &&
           verdicts.back() == Verdict::Quaternary && verdicts[5] == Verdict::Quaternary &&
           nodes_09 == 2 && nodes_11 == 0 && thr >= 0.2 && thr <= 0.5;
  r.detail = fmt("changes=%d nodes(0.9)=%d nodes(1.1)=%d threshold=%.6f oracles %s;", changes,
                 nodes_09, nodes_11, thr, oracles_agree ? "agree" : "DISAGREE") +
             row;
  return r;
}

inline CriterionResult check_q1_identity(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double a2 = 0, a3 = 0, d2 = 0;
    while (a2 == 0.0) a2 = 3.0 - u(rng);  // (0, 3]
    while (a3 == 0.0) a3 = 3.0 - u(rng);
    while (d2 == 0.0) d2 = 3.0 - u(rng);
    const double scale = std::pow(1.0 + a2 * a2 + a3 * a3 + d2 * d2, 4);
    const double diff = std::abs(q1(a2, a3, d2) - reference_surfaces(a2, a3, d2).quadruple_wall);
    worst = std::max(worst, diff / scale);
  }
  CriterionResult r{4, "q1 equals the quadruple-point wall at 1000 random points"};
  r.pass = worst < 1e-12;
  r.detail = fmt("max relative difference %.3g (limit 1e-12, scale (1+a2^2+a3^2+d2^2)^4)", worst);
  return r;
}

struct SectionSummary {
  std::string name;
  AgreementReport report;
};

inline std::vector<ScanSpec> acceptance_sections(const VerifyOptions& o) {
  const double step = o.full ? 0.03 : 0.15;
  auto make = [&](Param fixed, double value, Param x) {
    ScanSpec s;
    s.fixed = {{Param::A1, 1.0}, {fixed, value}};
    s.x = Axis{x, 0.0, 3.0, step};
    s.y = Axis{Param::A3, 0.0, 3.0, step};
    s.threads = o.threads;
    s.threshold_bias = o.threshold_bias;
    return s;
  };
  return {make(Param::D2, 0.5, Param::A2), make(Param::D2, 1.0, Param::A2),
          make(Param::A2, 0.5, Param::D2), make(Param::A2, 1.5, Param::D2)};
}

inline CriterionResult check_section_agreement(const VerifyOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t cells = 0, excluded = 0, disagreements = 0;
  std::string parts, where;
  for (const auto& spec : acceptance_sections(o)) {
    const auto rep = agreement_report(scan_section(spec));
    cells += rep.total;
    excluded += rep.near_surface_excluded;
    disagreements += rep.disagreements.size();
    const auto& [p, v] = *std::next(spec.fixed.begin());
    parts += fmt(" %s=%g: %zu binary, %zu disagree;", std::string(to_string(p)).c_str(), v,
                 rep.binary, rep.disagreements.size());
    for (std::size_t i = 0; i < rep.disagreements.size() && i < 3; ++i) {
      const auto& c = rep.disagreements[i];
      where += fmt(" [%s=%g %s=%g]", std::string(to_string(spec.x.param)).c_str(), c.x,
                   std::string(to_string(spec.y.param)).c_str(), c.y);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CriterionResult r{5, std::string("four section scans, step ") + (o.full ? "0.03" : "0.15") +
                           ": oracles agree off the 0.01 band"};
  r.pass = disagreements == 0 && secs < 900.0;
  r.detail = fmt("%zu cells, %zu near the surface, %zu disagreements, %.1f s (limit 900 s);",
                 cells, excluded, disagreements, secs) +
             parts + where;
  return r;
}

inline CriterionResult check_quadruple_points(const VerifyOptions& o) {
  const int n = o.full ? 20 : 5;
  std::mt19937_64 rng(o.seed + 6);
  std::uniform_real_distribution<double> ua2(0.3, 3.0), ud2(0.1, 2.5);
  int on_found = 0, off_clear = 0;
  double worst_on = 0.0, best_off = std::numeric_limits<double>::infinity();
  int drawn = 0;
  while (drawn < n) {
    const double a2 = ua2(rng), d2 = ud2(rng);
    const auto thr = a3_threshold(1, a2, d2).threshold_low;
    if (!thr || *thr < 0.1) continue;
    ++drawn;
    const auto on = quadruple_point_search(DhParams(1, a2, *thr, d2));
    const double on_res = on ? on->max_residual() : 1.0;
    worst_on = std::max(worst_on, on_res);
    on_found += on_res < 1e-6;
    const double a3_off = drawn % 2 ? *thr + 0.05 : *thr - 0.05;
    const auto off = quadruple_point_search(DhParams(1, a2, a3_off, d2));
    const double off_res = off ? off->max_residual() : 1.0;
    best_off = std::min(best_off, off_res);
    off_clear += off_res >= 1e-6;
  }
  CriterionResult r{6, "quadruple point exists on the surface and not 0.05 away"};
  r.pass = on_found == n && off_clear == n;
  r.detail = fmt("on-surface %d/%d below 1e-6 (worst %.3g); off-surface %d/%d clear (min %.3g)",
                 on_found, n, worst_on, off_clear, n, best_off);
  return r;
}

inline CriterionResult check_round_trip(const VerifyOptions& o) {
  const int n = o.full ? 1000 : 200;
  std::mt19937_64 rng(o.seed + 7);
  std::uniform_real_distribution<double> ua1(0.5, 2.0), ulen(0.1, 3.0), ud3(0.0, 2.0),
      uang(-kPi, kPi);
  std::bernoulli_distribution with_d3(0.5);
  int found = 0, roots_ok = 0;
  double worst_angle = 0.0, worst_root = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a1 = ua1(rng);
    const DhParams p(a1, a1 * ulen(rng), a1 * ulen(rng), a1 * ulen(rng),
                     with_d3(rng) ? a1 * ud3(rng) : 0.0);
    const JointConfig q(uang(rng), uang(rng), uang(rng));
    const CartesianPoint x = forward_kinematics(p, q);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : inverse_kinematics(p, x)) {
      best = std::min(best, std::max({std::abs(wrap_angle(s.q.theta1 - q.theta1)),
                                      std::abs(wrap_angle(s.q.theta2 - q.theta2)),
                                      std::abs(wrap_angle(s.q.theta3 - q.theta3))}));
    }
    worst_angle = std::max(worst_angle, best);
    found += best < 1e-8;

    // Homogeneous evaluation at (cos, sin) of theta3 / 2, so theta3 near pi
    // does not blow up t.
    const DhParams np = normalize(p);
    const QuarticCoeffs c = quartic_coeffs(np, CartesianPoint{x.x / a1, x.y / a1, x.z / a1});
    const double cx = std::cos(q.theta3 / 2), sy = std::sin(q.theta3 / 2);
    const double val = c.c0 * std::pow(sy, 4) + 4 * c.c1 * std::pow(sy, 3) * cx +
                       6 * c.c2 * sy * sy * cx * cx + 4 * c.c3 * sy * std::pow(cx, 3) +
                       c.c4 * std::pow(cx, 4);
    const double rel = std::abs(val) / c.scale();
    worst_root = std::max(worst_root, rel);
    roots_ok += rel < 1e-8;
  }
  CriterionResult r{7, "FK/IK round trip on random designs and configurations"};
  r.pass = found == n && roots_ok == n;
  r.detail = fmt("%d/%d recovered within 1e-8 rad (worst %.3g); %d/%d quartic roots within "
                 "1e-8 relative (worst %.3g)",
                 found, n, worst_angle, roots_ok, n, worst_root);
  return r;
}

inline CriterionResult check_d3_shift(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 8);
  std::uniform_real_distribution<double> ulen(0.05, 3.0), upt(-4.0, 4.0);
  int ok = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const DhParams base(1, ulen(rng), ulen(rng), ulen(rng));
    const CartesianPoint pt{upt(rng), upt(rng), upt(rng)};
    const PointInvariants inv0 = point_invariants(base, pt);
    bool all = true;
    for (double d3 : {0.0, 0.5, 2.0}) {
      const DhParams p = base.with_d3(d3);
      const PointInvariants inv = point_invariants(p, pt);
      const PointInvariants shifted{inv0.V + d3 * d3, inv0.R};
      const auto direct = multiplicity_invariants(quartic_coeffs(p, pt));
      const auto via = multiplicity_invariants(quartic_coeffs(base, shifted));
      all = all && inv.V == shifted.V && inv.R == shifted.R && direct.e1 == via.e1 &&
            direct.e2 == via.e2 && direct.e3 == via.e3;
    }
    ok += all;
  }
  CriterionResult r{8, "d3 enters the invariants only through V(d3) = V(0) + d3^2"};
  r.pass = ok == n;
  r.detail = fmt("%d/%d (design, point) pairs bit-identical for d3 in {0, 0.5, 2}", ok, n);
  return r;
}

inline CriterionResult check_threshold_geometry(const VerifyOptions&) {
  int cells = 0, violations = 0, undefined = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 58; ++i) {
    const double a2 = 0.1 + 0.05 * i;
    for (int j = 0; j <= 59; ++j) {
      const double d2 = 0.05 + 0.05 * j;
      ++cells;
      const auto thr = a3_threshold(1, a2, d2).threshold_low;
      if (!thr) {
        ++undefined;
        continue;
      }
      worst = std::max(worst, *thr - a2);
      violations += *thr > a2 + 1e-9;
    }
  }
  int high_cells = 0, high_bad = 0;
  for (double d2 : {0.5, 1.0}) {
    for (int i = 1; i <= 100; ++i) {
      const double a2 = 0.03 * i;
      const auto high = a3_threshold(1, a2, d2).threshold_high;
      if (!high) continue;
      ++high_cells;
      high_bad += !(*high > a2);
    }
  }
  CriterionResult r{9, "threshold below a2 on the grid; second root above a2 at d2 = 0.5, 1"};
  r.pass = violations == 0 && high_bad == 0;
  r.detail = fmt("%d grid points, %d undefined, %d above a2 (max threshold - a2 = %.3g); "
                 "second root: %d values, %d not above a2",
                 cells, undefined, violations, worst, high_cells, high_bad);
  return r;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& o = {},
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
  using Check = CriterionResult (*)(const VerifyOptions&);
  const Check checks[] = {detail::check_reference_designs, detail::check_cusps_and_regions,
                          detail::check_a3_sweep,          detail::check_q1_identity,
                          detail::check_section_agreement, detail::check_quadruple_points,
                          detail::check_round_trip,        detail::check_d3_shift,
                          detail::check_threshold_geometry};
  std::vector<CriterionResult> out;
  for (Check c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c(o);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(out.size()) + 1;
      r.title = "criterion raised an exception";
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  return detail::fmt("[%s] %d. %s (%.2f s)\n       %s", r.pass ? "PASS" : "FAIL", r.id,
                     r.title.c_str(), r.seconds, r.detail.c_str());
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace orthoiks
