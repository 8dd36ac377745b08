#pragma once

// CSV and SVG renderings of scans, the separating surface and workspace
// cross-sections. CSV numbers use 9 significant digits.

#include "orthoiks/atlas.hpp"
#include "orthoiks/classify.hpp"
#include "orthoiks/svg.hpp"
#include "orthoiks/workspace.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace orthoiks {

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Header: <x param>,<y param>,closed_form,cusp_scan,grid_iks,agree,near_surface.
/// Oracles that did not run leave their column empty.
inline void write_scan_csv(std::ostream& out, const ScanSpec& spec,
                           const std::vector<ScanCell>& cells) {
  out << to_string(spec.x.param) << ',' << to_string(spec.y.param);
  for (Oracle o : kAllOracles) out << ',' << to_string(o);
  out << ",agree,near_surface\n";
  for (const auto& c : cells) {
    out << format_g9(c.x) << ',' << format_g9(c.y);
    for (const auto& v : c.verdicts) {
      out << ',';
      if (v) out << to_string(*v);
    }
    out << ',' << (c.agree ? 1 : 0) << ',' << (c.near_surface ? 1 : 0) << '\n';
  }
}

inline void write_mesh_csv(std::ostream& out, const std::vector<MeshNode>& mesh) {
  out << "a2,d2,threshold_low\n";
  for (const auto& m : mesh) {
    out << format_g9(m.a2) << ',' << format_g9(m.d2) << ',';
    if (m.threshold_low) out << format_g9(*m.threshold_low);
    out << '\n';
  }
}

namespace detail {

inline std::optional<Verdict> plotted_verdict(const ScanCell& c) {
  for (Oracle o : {Oracle::CuspScan, Oracle::GridIks, Oracle::ClosedForm}) {
    if (auto v = c.verdict(o)) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Binary cells as marks, disagreements as crosses, and both threshold
/// branches overlaid when the vertical axis is a3.
inline std::string scan_svg(const ScanSpec& spec, const std::vector<ScanCell>& cells) {
  svg::Plot plot(spec.x.lo, spec.x.hi, spec.y.lo, spec.y.hi);
  std::string title = "binary cells";
  for (const auto& [p, v] : spec.fixed) title += ", " + std::string(to_string(p)) + " = " + format_g9(v);
  plot.title(title);
  plot.clip_begin();
  for (const auto& c : cells) {
    if (detail::plotted_verdict(c) == Verdict::Binary) {
      plot.cell(c.x, c.y, spec.x.step, spec.y.step, "#4a7bd0");
    }
  }
  for (const auto& c : cells) {
    if (!c.agree) plot.cross(c.x, c.y, 3.0, c.near_surface ? "#e0a000" : "#d02020");
  }

  const bool vertical_a3 = spec.y.param == Param::A3;
  const bool x_ok = spec.x.param == Param::A2 || spec.x.param == Param::D2;
  if (vertical_a3 && x_ok) {
    std::vector<std::pair<double, double>> low, high;
    const int n = 400;
    auto flush = [&](std::vector<std::pair<double, double>>& line, const std::string& color) {
      if (line.size() > 1) plot.polyline(line, color, false, 2.0);
      line.clear();
    };
    for (int i = 0; i <= n; ++i) {
      const double xv = spec.x.lo + (spec.x.hi - spec.x.lo) * i / n;
      if (!(xv > 0.0)) continue;
      try {
        DhParams p = detail::cell_params(spec, xv, 1.0);
        const auto thr = a3_threshold(p.a1(), p.a2(), p.d2());
        if (thr.threshold_low) low.emplace_back(xv, *thr.threshold_low); else flush(low, "#000000");
        if (thr.threshold_high) high.emplace_back(xv, *thr.threshold_high); else flush(high, "#2a9d3a");
      } catch (const std::exception&) {
        flush(low, "#000000");
        flush(high, "#2a9d3a");
      }
    }
    flush(low, "#000000");
    flush(high, "#2a9d3a");
  }
  plot.clip_end();
  plot.axes(std::string(to_string(spec.x.param)), std::string(to_string(spec.y.param)));
  std::vector<std::pair<std::string, std::string>> legend = {{"binary cell", "#4a7bd0"},
                                                             {"disagreement", "#d02020"}};
  if (vertical_a3 && x_ok) {
    legend.push_back({"separating threshold", "#000000"});
    legend.push_back({"second root (non-separating)", "#2a9d3a"});
  }
  plot.legend(legend);
  return plot.str();
}

/// Cross-section with both boundaries, isolated singular points and marked
/// features (cusps as dots, nodes and quadruple points as crosses).
inline std::string workspace_svg(const DhParams& params, const WorkspaceBoundary& wb,
                                 const std::vector<BoundaryFeature>& features) {
  const double r = params.reach();
  svg::Plot plot(0.0, r, -r, r, 520, 900);
  plot.title("cross-section a2=" + format_g9(params.a2()) + " a3=" + format_g9(params.a3()) +
             " d2=" + format_g9(params.d2()));
  plot.clip_begin();
  for (const auto& c : wb.curves) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : c.samples) pts.emplace_back(s.rho, s.z);
    plot.polyline(pts, c.branch == BoundaryId::WS1 ? "#d05020" : "#2050d0", true);
  }
  for (const auto& p : wb.isolated_points) plot.circle(p.rho, p.z, 4.0, "#2a9d3a");
  for (const auto& f : features) {
    if (f.kind == FeatureKind::Cusp) {
      plot.circle(f.location.rho, f.location.z, 4.0, "#000000");
    } else {
      plot.cross(f.location.rho, f.location.z, 5.0,
                 f.kind == FeatureKind::Node ? "#8a2be2" : "#e0a000");
    }
  }
  plot.clip_end();
  plot.axes("rho", "z");
  plot.legend({{"WS1 (internal)", "#d05020"},
               {"WS2 (external)", "#2050d0"},
               {"cusp", "#000000"},
               {"node", "#8a2be2"},
               {"isolated singular point", "#2a9d3a"}});
  return plot.str();
}

/// Singularity curves over -pi <= theta2, theta3 < pi; polylines break where
/// a curve wraps in theta3.
inline std::string joint_space_svg(const std::vector<JointCurve>& curves) {
  svg::Plot plot(-kPi, kPi, -kPi, kPi);
  plot.title("singularity curves in joint space");
  plot.clip_begin();
  for (const auto& c : curves) {
    const std::string color = c.branch == BranchId::S1   ? "#d05020"
                              : c.branch == BranchId::S2 ? "#2050d0"
                                                         : "#2a9d3a";
    std::vector<std::pair<double, double>> line;
    for (const auto& s : c.samples) {
      if (!line.empty() && std::abs(s.theta3 - line.back().second) > kPi) {
        plot.polyline(line, color);
        line.clear();
      }
      line.emplace_back(s.theta2, s.theta3);
    }
    plot.polyline(line, color);
  }
  plot.clip_end();
  plot.axes("theta2", "theta3");
  plot.legend({{"S1", "#d05020"}, {"S2", "#2050d0"}, {"horizontal lines", "#2a9d3a"}});
  return plot.str();
}

/// Rows: kind,branch,rho,z,theta2,theta3 for boundary samples ("sample"),
/// isolated points ("isolated") and features.
inline void write_workspace_csv(std::ostream& out, const WorkspaceBoundary& wb,
                                const std::vector<BoundaryFeature>& features) {
  out << "kind,branch,rho,z,theta2,theta3\n";
  for (const auto& c : wb.curves) {
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      out << "sample," << to_string(c.branch) << ',' << format_g9(c.samples[i].rho) << ','
          << format_g9(c.samples[i].z) << ',' << format_g9(c.preimage[i].theta2) << ','
          << format_g9(c.preimage[i].theta3) << '\n';
    }
  }
  for (const auto& p : wb.isolated_points) {
    out << "isolated,," << format_g9(p.rho) << ',' << format_g9(p.z) << ",,\n";
  }
  for (const auto& f : features) {
    out << to_string(f.kind) << ',' << to_string(f.branch) << ',' << format_g9(f.location.rho)
        << ',' << format_g9(f.location.z) << ',' << format_g9(f.theta2) << ",\n";
  }
}

}  // namespace orthoiks
