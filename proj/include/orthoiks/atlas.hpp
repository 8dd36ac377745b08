#pragma once

// Two-parameter sections of the design space: every cell is classified by the
// closed-form rule and, optionally, by the two numerical oracles.

#include "orthoiks/classify.hpp"
#include "orthoiks/geometry.hpp"
#include "orthoiks/workspace.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace orthoiks {

enum class Param { A1, A2, A3, D2, D3 };
enum class Oracle { ClosedForm, CuspScan, GridIks };

inline constexpr std::array<Oracle, 3> kAllOracles = {Oracle::ClosedForm, Oracle::CuspScan,
                                                      Oracle::GridIks};

inline std::string_view to_string(Param p) {
  switch (p) {
    case Param::A1: return "a1";
    case Param::A2: return "a2";
    case Param::A3: return "a3";
    case Param::D2: return "d2";
    case Param::D3: return "d3";
  }
  return "";
}

inline std::string_view to_string(Oracle o) {
  switch (o) {
    case Oracle::ClosedForm: return "closed_form";
    case Oracle::CuspScan: return "cusp_scan";
    case Oracle::GridIks: return "grid_iks";
  }
  return "";
}

inline std::optional<Param> parse_param(std::string_view s) {
  for (Param p : {Param::A1, Param::A2, Param::A3, Param::D2, Param::D3}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

inline std::optional<Oracle> parse_oracle(std::string_view s) {
  for (Oracle o : kAllOracles) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

/// Swept range (lo, hi]: values lo + k step for k = 1, 2, ... up to hi.
struct Axis {
  Param param = Param::A2;
  double lo = 0.0;
  double hi = 3.0;
  double step = 0.03;

  std::vector<double> values() const {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 1; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
    return out;
  }
};

struct ScanSpec {
  std::map<Param, double> fixed = {{Param::A1, 1.0}};  // unlisted parameters are 0
  Axis x{Param::A2};
  Axis y{Param::A3};
  std::set<Oracle> oracles = {kAllOracles.begin(), kAllOracles.end()};
  double near_eps = 0.01;
  unsigned threads = 0;  // 0: hardware concurrency
  int boundary_samples = 2048;
  GridIksOptions grid{};
  double threshold_bias = 0.0;  // fault injection into the closed form only
};

struct ScanCell {
  double x = 0.0;
  double y = 0.0;
  DhParams params{1, 0, 0, 0};
  std::array<std::optional<Verdict>, 3> verdicts;  // indexed like kAllOracles
  bool agree = true;
  bool near_surface = false;

  std::optional<Verdict> verdict(Oracle o) const { return verdicts[static_cast<int>(o)]; }
};

namespace detail {

inline double& slot(std::array<double, 5>& v, Param p) { return v[static_cast<int>(p)]; }

inline DhParams cell_params(const ScanSpec& spec, double x, double y) {
  std::array<double, 5> v{};
  for (const auto& [p, value] : spec.fixed) slot(v, p) = value;
  slot(v, spec.x.param) = x;
  slot(v, spec.y.param) = y;
  return DhParams(v[0], v[1], v[2], v[3], v[4]);
}

inline bool near_separating_surface(const DhParams& p, double eps) {
  if (!(p.a1() > 0.0 && p.a2() > 0.0 && p.d2() > 0.0)) return false;
  const auto thr = threshold_unchecked(p.a1(), p.a2(), p.d2());
  return std::abs(p.a3() - thr.threshold_low.value_or(0.0)) < eps;
}

}  // namespace detail

/// Throws std::invalid_argument describing the first problem found.
inline void validate(const ScanSpec& spec) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("scan spec: " + m); };
  if (spec.x.param == spec.y.param) fail("the two swept parameters must differ");
  for (const Axis* a : {&spec.x, &spec.y}) {
    const std::string name(to_string(a->param));
    if (!(a->step > 0.0) || !std::isfinite(a->step)) fail("step of " + name + " must be > 0");
    if (!(a->lo >= 0.0) || !(a->hi > a->lo) || !std::isfinite(a->hi)) {
      fail("range of " + name + " must satisfy 0 <= lo < hi");
    }
    if (a->values().empty()) fail("range of " + name + " holds no grid value");
    if (spec.fixed.count(a->param)) fail(name + " is both fixed and swept");
  }
  for (const auto& [p, value] : spec.fixed) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      fail("fixed " + std::string(to_string(p)) + " must be finite and >= 0");
    }
  }
  if (spec.oracles.empty()) fail("no oracle selected");
  if (!(spec.near_eps >= 0.0)) fail("near_eps must be >= 0");
  if (spec.oracles.count(Oracle::CuspScan) || spec.oracles.count(Oracle::GridIks)) {
    auto fixed = [&](Param p) {
      const auto it = spec.fixed.find(p);
      return it == spec.fixed.end() ? 0.0 : it->second;
    };
    for (Param p : {Param::A1, Param::A2, Param::A3, Param::D2}) {
      if (spec.x.param != p && spec.y.param != p && !(fixed(p) > 0.0)) {
        fail("numerical oracles need a positive " + std::string(to_string(p)));
      }
    }
    if (spec.x.param == Param::D3 || spec.y.param == Param::D3 || fixed(Param::D3) != 0.0) {
      fail("numerical oracles need d3 = 0");
    }
  }
  if (spec.boundary_samples < 16) fail("boundary_samples must be >= 16");
}

inline ScanCell evaluate_cell(const ScanSpec& spec, double x, double y) {
  ScanCell cell;
  cell.x = x;
  cell.y = y;
  cell.params = detail::cell_params(spec, x, y);
  const DhParams& p = cell.params;
  if (spec.oracles.count(Oracle::ClosedForm)) {
    ClassifyOptions opts;
    opts.threshold_bias = spec.threshold_bias * p.a1();
    cell.verdicts[0] = classify(p, opts).verdict;
  }
  if (spec.oracles.count(Oracle::CuspScan)) {
    cell.verdicts[1] = numerical_classify(p, spec.boundary_samples);
  }
  if (spec.oracles.count(Oracle::GridIks)) {
    GridIksOptions g = spec.grid;
    g.boundary_samples = spec.boundary_samples;
    cell.verdicts[2] = grid_iks_oracle(p, g) >= 4 ? Verdict::Quaternary : Verdict::Binary;
  }
  std::optional<Verdict> first;
  for (const auto& v : cell.verdicts) {
    if (!v) continue;
    if (!first) first = v;
    if (*v != *first) cell.agree = false;
  }
  cell.near_surface = detail::near_separating_surface(p, spec.near_eps * p.a1());
  return cell;
}

/// One cell per grid point, ordered with x outer and y inner. The order and
/// contents do not depend on the number of worker threads.
inline std::vector<ScanCell> scan_section(const ScanSpec& spec) {
  validate(spec);
  const auto xs = spec.x.values();
  const auto ys = spec.y.values();
  const std::size_t total = xs.size() * ys.size();
  std::vector<ScanCell> cells(total);

  unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < total && !failed; i = next++) {
      try {
        cells[i] = evaluate_cell(spec, xs[i / ys.size()], ys[i % ys.size()]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return cells;
}

struct AgreementReport {
  std::size_t total = 0;
  std::size_t binary = 0;      // by the first oracle that ran
  std::size_t quaternary = 0;
  std::size_t near_surface_excluded = 0;
  std::vector<ScanCell> disagreements;  // cells off the band only
};

inline AgreementReport agreement_report(const std::vector<ScanCell>& cells) {
  AgreementReport r;
  for (const auto& c : cells) {
    ++r.total;
    for (const auto& v : c.verdicts) {
      if (v) {
        ++(*v == Verdict::Binary ? r.binary : r.quaternary);
        break;
      }
    }
    if (c.near_surface) {
      ++r.near_surface_excluded;
    } else if (!c.agree) {
      r.disagreements.push_back(c);
    }
  }
  return r;
}

struct MeshNode {
  double a2 = 0.0;
  double d2 = 0.0;
  std::optional<double> threshold_low;  // empty where the radicand is negative
};

/// Separating surface a3 = threshold_low(a2, d2) with a1 = 1, sampled on a
/// resolution x resolution grid including both ends of each range.
inline std::vector<MeshNode> surface_mesh(std::pair<double, double> a2_range,
                                          std::pair<double, double> d2_range, int resolution) {
  if (resolution < 2) throw std::invalid_argument("surface_mesh: resolution must be >= 2");
  for (const auto& r : {a2_range, d2_range}) {
    if (!(r.first > 0.0) || !(r.second >= r.first) || !std::isfinite(r.second)) {
      throw std::invalid_argument("surface_mesh: ranges must satisfy 0 < lo <= hi");
    }
  }
  std::vector<MeshNode> out;
  for (int i = 0; i < resolution; ++i) {
    const double a2 = a2_range.first + (a2_range.second - a2_range.first) * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double d2 = d2_range.first + (d2_range.second - d2_range.first) * j / (resolution - 1);
      out.push_back({a2, d2, a3_threshold(1.0, a2, d2).threshold_low});
    }
  }
  return out;
}

}  // namespace orthoiks
