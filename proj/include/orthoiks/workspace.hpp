#pragma once

// Singularity curves, workspace boundary, cusp/node detection and two
// numerical binary/quaternary oracles that do not use the closed-form
// threshold. Everything here assumes d3 = 0.
//
// The second factor of det(J) vanishes iff
//   sin(theta3) (c2 a2 + a1) = cos(theta3) c2 d2,
// so for each theta2 the singular theta3 values are phi(theta2) and
// phi(theta2) + pi with phi = atan2(c2 d2, c2 a2 + a1). For d2 > 0 the vector
// (c2 d2, c2 a2 + a1) never vanishes and never crosses the negative x axis,
// so phi is smooth and both branches are closed curves over theta2. One maps
// to the internal boundary WS1, the other to the external boundary WS2.

#include "orthoiks/classify.hpp"
#include "orthoiks/geometry.hpp"
#include "orthoiks/ik.hpp"
#include "orthoiks/quartic.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace orthoiks {

enum class BranchId { S1, S2, HorizontalPlus, HorizontalMinus };
enum class BoundaryId { WS1, WS2 };
enum class FeatureKind { Cusp, Node, QuadruplePoint };

inline std::string_view to_string(BoundaryId b) { return b == BoundaryId::WS1 ? "WS1" : "WS2"; }

inline std::string_view to_string(BranchId b) {
  switch (b) {
    case BranchId::S1: return "S1";
    case BranchId::S2: return "S2";
    case BranchId::HorizontalPlus: return "H+";
    case BranchId::HorizontalMinus: return "H-";
  }
  return "";
}

inline std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Cusp: return "cusp";
    case FeatureKind::Node: return "node";
    case FeatureKind::QuadruplePoint: return "quadruple";
  }
  return "";
}

struct JointSample {
  double theta2 = 0.0;
  double theta3 = 0.0;
};

struct JointCurve {
  BranchId branch = BranchId::S1;
  std::vector<JointSample> samples;  // ordered by theta2
};

struct BoundaryCurve {
  BoundaryId branch = BoundaryId::WS1;
  std::vector<CrossSectionPoint> samples;  // closed polyline, caller's units
  std::vector<JointSample> preimage;       // joint values of each sample
};

struct WorkspaceBoundary {
  std::vector<BoundaryCurve> curves;
  // Images of the horizontal joint-space lines (a2 <= a3): the operation
  // point sits on the second joint axis and does not move with theta2.
  std::vector<CrossSectionPoint> isolated_points;
};

struct BoundaryFeature {
  FeatureKind kind = FeatureKind::Cusp;
  CrossSectionPoint location;
  MultiplicityInvariants residuals;  // normalized, in the feature's own frame
  BoundaryId branch = BoundaryId::WS1;
  double theta2 = 0.0;
};

struct WorkspaceOptions {
  int n_samples = 2048;
  double feat_tol = 1e-7;
};

namespace detail {

struct Branch {
  BoundaryId id;
  double shift;  // 0 or pi added to phi(theta2)
};

// Validates and normalizes. The boundary machinery needs a1, a2, a3, d2 > 0
// and d3 = 0.
inline DhParams workspace_params(const DhParams& params) {
  if (!(params.a1() > 0.0 && params.a2() > 0.0 && params.a3() > 0.0 && params.d2() > 0.0)) {
    throw std::domain_error("workspace: a1, a2, a3 and d2 must be strictly positive");
  }
  if (params.d3() != 0.0) {
    throw std::domain_error("workspace: boundary analysis requires d3 = 0");
  }
  return normalize(params);
}

inline double singular_theta3(const DhParams& np, double theta2, double shift) {
  const double c2 = std::cos(theta2);
  return wrap_angle(std::atan2(c2 * np.d2(), c2 * np.a2() + np.a1()) + shift);
}

inline double sample_theta2(int i, int n) { return -kPi + (i + 0.5) * (2.0 * kPi / n); }

inline CrossSectionPoint image(const DhParams& np, double theta2, double theta3) {
  return cross_section(planar_position(np, theta2, theta3));
}

// WS1 is the branch whose image stays closer to the base.
inline std::array<Branch, 2> branches(const DhParams& np) {
  double far0 = 0.0, far1 = 0.0;
  constexpr int n = 128;
  for (int i = 0; i < n; ++i) {
    const double t2 = sample_theta2(i, n);
    far0 = std::max(far0, planar_position(np, t2, singular_theta3(np, t2, 0.0)).norm());
    far1 = std::max(far1, planar_position(np, t2, singular_theta3(np, t2, kPi)).norm());
  }
  if (far0 >= far1) return {Branch{BoundaryId::WS1, kPi}, Branch{BoundaryId::WS2, 0.0}};
  return {Branch{BoundaryId::WS1, 0.0}, Branch{BoundaryId::WS2, kPi}};
}

inline QuarticCoeffs coeffs_at(const DhParams& np, double theta2, double theta3) {
  return quartic_coeffs(np, planar_position(np, theta2, theta3));
}

// Invariants at the image of a boundary sample, expressed in the half-angle
// frame centred on that sample's theta3 and normalized by max|c|.
inline MultiplicityInvariants local_residuals(const DhParams& np, double theta2, double theta3) {
  return normalized_invariants(rotate_half_angle(coeffs_at(np, theta2, theta3), theta3));
}

inline double j_invariant(const DhParams& np, double theta2, double shift) {
  return multiplicity_invariants(coeffs_at(np, theta2, singular_theta3(np, theta2, shift))).e2;
}

// Sample indices i such that J changes sign between samples i and i+1.
inline std::vector<int> j_sign_changes(const DhParams& np, double shift, int n) {
  std::vector<double> j(n);
  for (int i = 0; i < n; ++i) j[i] = j_invariant(np, sample_theta2(i, n), shift);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const double a = j[i], b = j[(i + 1) % n];
    if ((a < 0.0) != (b < 0.0)) out.push_back(i);
  }
  return out;
}

inline void require_samples(int n) {
  if (n < 16) throw std::invalid_argument("workspace: n_samples must be at least 16");
}

}  // namespace detail

inline std::vector<JointCurve> singularity_curves(const DhParams& params, int n_samples = 2048) {
  detail::require_samples(n_samples);
  const DhParams np = detail::workspace_params(params);
  std::vector<JointCurve> out;
  for (const auto& br : detail::branches(np)) {
    JointCurve c;
    c.branch = br.id == BoundaryId::WS1 ? BranchId::S1 : BranchId::S2;
    for (int i = 0; i < n_samples; ++i) {
      const double t2 = detail::sample_theta2(i, n_samples);
      c.samples.push_back({t2, detail::singular_theta3(np, t2, br.shift)});
    }
    out.push_back(std::move(c));
  }
  if (np.a2() <= np.a3()) {
    // First factor: a2 + c3 a3 = 0.
    const double t3 = std::acos(-np.a2() / np.a3());
    for (const auto& [id, value] : {std::pair{BranchId::HorizontalPlus, t3},
                                    std::pair{BranchId::HorizontalMinus, -t3}}) {
      JointCurve c;
      c.branch = id;
      for (int i = 0; i < n_samples; ++i) {
        c.samples.push_back({detail::sample_theta2(i, n_samples), wrap_angle(value)});
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline WorkspaceBoundary boundary_cross_section(const DhParams& params, int n_samples = 2048) {
  const double a1 = params.a1();
  const DhParams np = detail::workspace_params(params);
  WorkspaceBoundary out;
  for (const auto& curve : singularity_curves(np, n_samples)) {
    if (curve.branch == BranchId::S1 || curve.branch == BranchId::S2) {
      BoundaryCurve b;
      b.branch = curve.branch == BranchId::S1 ? BoundaryId::WS1 : BoundaryId::WS2;
      for (const auto& s : curve.samples) {
        const CrossSectionPoint p = detail::image(np, s.theta2, s.theta3);
        b.samples.push_back({p.rho * a1, p.z * a1});
        b.preimage.push_back(s);
      }
      out.curves.push_back(std::move(b));
    } else {
      const auto& s = curve.samples.front();
      const CrossSectionPoint p = detail::image(np, s.theta2, s.theta3);
      out.isolated_points.push_back({p.rho * a1, p.z * a1});
    }
  }
  return out;
}

namespace detail {

inline std::vector<BoundaryFeature> find_cusps(const DhParams& np, const Branch& br, int n,
                                               double feat_tol) {
  std::vector<BoundaryFeature> out;
  const double h = 2.0 * kPi / n;
  for (int i : j_sign_changes(np, br.shift, n)) {
    double lo = sample_theta2(i, n);
    double hi = lo + h;
    auto f = [&](double t2) { return j_invariant(np, t2, br.shift); };
    // Bisect to the resolution of double.
    auto stop = [](double a, double b) {
      return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a));
    };
    const auto bracket = boost::math::tools::bisect(f, lo, hi, stop);
    const double t2 = 0.5 * (bracket.first + bracket.second);
    const double t3 = singular_theta3(np, t2, br.shift);
    BoundaryFeature feat;
    feat.branch = br.id;
    feat.theta2 = wrap_angle(t2);
    feat.location = image(np, t2, t3);
    feat.residuals = local_residuals(np, t2, t3);
    feat.kind = std::abs(feat.residuals.e3) < feat_tol ? FeatureKind::QuadruplePoint
                                                       : FeatureKind::Cusp;
    if (std::abs(feat.residuals.e1) < std::sqrt(feat_tol)) out.push_back(feat);
  }
  return out;
}

// Does the quartic at the image of (theta2, theta3) have a double root at
// that theta3? Checked in the frame where the root sits at t' = 0.
inline bool double_root_at(const DhParams& np, const CrossSectionPoint& p, double theta3) {
  const QuarticCoeffs c =
      rotate_half_angle(quartic_coeffs(np, CartesianPoint{p.rho, 0.0, p.z}), theta3);
  const double s = c.max_abs();
  return std::abs(c.c4) <= 1e-8 * s && std::abs(c.c3) <= 1e-8 * s;
}

inline std::vector<BoundaryFeature> find_nodes(const DhParams& np, const Branch& br, int n) {
  std::vector<CrossSectionPoint> pts(n);
  for (int i = 0; i < n; ++i) {
    const double t2 = sample_theta2(i, n);
    pts[i] = image(np, t2, singular_theta3(np, t2, br.shift));
  }
  auto img = [&](double t2) { return image(np, t2, singular_theta3(np, t2, br.shift)); };
  auto cross = [](double ax, double ay, double bx, double by) { return ax * by - ay * bx; };

  std::vector<BoundaryFeature> out;
  const double h = 2.0 * kPi / n;
  const double reach = np.reach();
  for (int i = 0; i < n; ++i) {
    const auto& p = pts[i];
    const auto& p2 = pts[(i + 1) % n];
    const double rx = p2.rho - p.rho, rz = p2.z - p.z;
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto& q = pts[j];
      const auto& q2 = pts[(j + 1) % n];
      if (std::max(p.rho, p2.rho) < std::min(q.rho, q2.rho) ||
          std::max(q.rho, q2.rho) < std::min(p.rho, p2.rho) ||
          std::max(p.z, p2.z) < std::min(q.z, q2.z) || std::max(q.z, q2.z) < std::min(p.z, p2.z)) {
        continue;
      }
      const double sx = q2.rho - q.rho, sz = q2.z - q.z;
      const double den = cross(rx, rz, sx, sz);
      if (den == 0.0) continue;
      const double u = cross(q.rho - p.rho, q.z - p.z, sx, sz) / den;
      const double v = cross(q.rho - p.rho, q.z - p.z, rx, rz) / den;
      if (u < 0.0 || u >= 1.0 || v < 0.0 || v >= 1.0) continue;

      // Newton on img(ta) = img(tb).
      double ta = sample_theta2(i, n) + u * h;
      double tb = sample_theta2(j, n) + v * h;
      bool converged = false;
      for (int it = 0; it < 40; ++it) {
        const auto fa = img(ta), fb = img(tb);
        const double fr = fa.rho - fb.rho, fz = fa.z - fb.z;
        if (std::hypot(fr, fz) < 1e-14 * reach) {
          converged = true;
          break;
        }
        const double e = 1e-7;
        const auto ap = img(ta + e), am = img(ta - e), bp = img(tb + e), bm = img(tb - e);
        const double j11 = (ap.rho - am.rho) / (2 * e), j21 = (ap.z - am.z) / (2 * e);
        const double j12 = -(bp.rho - bm.rho) / (2 * e), j22 = -(bp.z - bm.z) / (2 * e);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        ta -= (j22 * fr - j12 * fz) / det;
        tb -= (-j21 * fr + j11 * fz) / det;
      }
      if (!converged) continue;
      if (std::abs(wrap_angle(ta - tb)) < 1e-6) continue;
      const double t3a = singular_theta3(np, ta, br.shift);
      const double t3b = singular_theta3(np, tb, br.shift);
      if (std::abs(wrap_angle(t3a - t3b)) < 1e-6) continue;
      const CrossSectionPoint loc = img(ta);
      if (!double_root_at(np, loc, t3a) || !double_root_at(np, loc, t3b)) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const BoundaryFeature& f) {
        return std::hypot(f.location.rho - loc.rho, f.location.z - loc.z) < 1e-9 * reach;
      });
      if (dup) continue;
      BoundaryFeature feat;
      feat.kind = FeatureKind::Node;
      feat.branch = br.id;
      feat.theta2 = wrap_angle(ta);
      feat.location = loc;
      feat.residuals = local_residuals(np, ta, t3a);
      out.push_back(feat);
    }
  }
  return out;
}

}  // namespace detail

/// Cusps (sign changes of the J invariant along both boundary branches,
/// refined by bisection), quadruple points (cusps whose third residual also
/// vanishes) and nodes (self-intersections of WS1 with two distinct double
/// roots). Locations are in the caller's units.
inline std::vector<BoundaryFeature> find_features(const DhParams& params,
                                                  WorkspaceOptions opts = {}) {
  detail::require_samples(opts.n_samples);
  const DhParams np = detail::workspace_params(params);
  std::vector<BoundaryFeature> out;
  for (const auto& br : detail::branches(np)) {
    for (auto& f : detail::find_cusps(np, br, opts.n_samples, opts.feat_tol)) out.push_back(f);
    if (br.id == BoundaryId::WS1) {
      for (auto& f : detail::find_nodes(np, br, opts.n_samples)) out.push_back(f);
    }
  }
  for (auto& f : out) {
    f.location.rho *= params.a1();
    f.location.z *= params.a1();
  }
  return out;
}

inline int count_features(const std::vector<BoundaryFeature>& features, FeatureKind kind) {
  return static_cast<int>(std::count_if(features.begin(), features.end(),
                                        [&](const BoundaryFeature& f) { return f.kind == kind; }));
}

/// Cusp-scan oracle: a3 >= a2 is quaternary; otherwise quaternary iff the
/// boundary has a point where three solutions coincide.
inline Verdict numerical_classify(const DhParams& params, int n_samples = 2048) {
  detail::require_samples(n_samples);
  const DhParams np = detail::workspace_params(params);
  if (np.a3() >= np.a2()) return Verdict::Quaternary;
  for (const auto& br : detail::branches(np)) {
    if (!detail::j_sign_changes(np, br.shift, n_samples).empty()) return Verdict::Quaternary;
  }
  return Verdict::Binary;
}

struct GridIksOptions {
  int grid_res = 48;  // rho cells; z gets twice as many
  int boundary_samples = 2048;
  // Probe offsets from the boundary, as fractions of the reach.
  std::vector<double> offsets = {1e-3, 1e-4, 1e-5};
};

/// Count-based oracle: the largest number of distinct solutions found over a
/// rectangular (rho, z) grid and over probes placed just off both sides of
/// the sampled boundary. The probes matter near the separating surface, where
/// the four-solution lobes shrink far below any affordable grid spacing.
/// Stops early once 4 is seen.
inline int grid_iks_oracle(const DhParams& params, const GridIksOptions& opts = {}) {
  const DhParams np = detail::workspace_params(params);
  const double reach = np.reach();
  int best = 0;
  auto probe = [&](double rho, double z) {
    const CartesianPoint p{std::abs(rho), 0.0, z};
    if (p.norm() > reach) return false;
    const int n = solve_quartic_real(quartic_coeffs(np, p)).distinct();
    best = std::max(best, n);
    return best >= 4;
  };

  const int nr = std::max(1, opts.grid_res), nz = 2 * nr;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nz; ++j) {
      if (probe((i + 0.5) * reach / nr, -reach + (j + 0.5) * 2.0 * reach / nz)) return best;
    }
  }

  const int n = opts.boundary_samples;
  detail::require_samples(n);
  for (double eta : opts.offsets) {
    for (const auto& br : detail::branches(np)) {
      std::vector<CrossSectionPoint> pts(n);
      for (int i = 0; i < n; ++i) {
        const double t2 = detail::sample_theta2(i, n);
        pts[i] = detail::image(np, t2, detail::singular_theta3(np, t2, br.shift));
      }
      for (int i = 0; i < n; ++i) {
        const auto& prev = pts[(i + n - 1) % n];
        const auto& next = pts[(i + 1) % n];
        const double tr = next.rho - prev.rho, tz = next.z - prev.z;
        const double len = std::hypot(tr, tz);
        if (len == 0.0) continue;
        const double nrho = -tz / len, nzv = tr / len;
        for (double side : {1.0, -1.0}) {
          const double d = side * eta * reach;
          if (probe(pts[i].rho + d * nrho, pts[i].z + d * nzv)) return best;
        }
      }
    }
  }
  return best;
}

struct QuadruplePoint {
  CrossSectionPoint location;        // caller's units
  MultiplicityInvariants residuals;  // normalized, in the point's own frame
  BoundaryId branch = BoundaryId::WS1;
  double theta2 = 0.0;
  double theta3 = 0.0;

  double max_residual() const {
    return std::max({std::abs(residuals.e1), std::abs(residuals.e2), std::abs(residuals.e3)});
  }
};

/// Point of the boundary closest to having four coincident solutions: the
/// minimizer of |e1| + |e2| + |e3| over both branches (coarse scan, then
/// Brent refinement around the best local minima). The caller judges the
/// residual magnitude.
inline std::optional<QuadruplePoint> quadruple_point_search(const DhParams& params,
                                                            int n_samples = 2048) {
  detail::require_samples(n_samples);
  const DhParams np = detail::workspace_params(params);
  const double h = 2.0 * kPi / n_samples;
  std::optional<QuadruplePoint> best;
  double best_value = std::numeric_limits<double>::infinity();

  for (const auto& br : detail::branches(np)) {
    auto objective = [&](double t2) {
      const auto r = detail::local_residuals(np, t2, detail::singular_theta3(np, t2, br.shift));
      return std::abs(r.e1) + std::abs(r.e2) + std::abs(r.e3);
    };
    std::vector<double> f(n_samples);
    for (int i = 0; i < n_samples; ++i) f[i] = objective(detail::sample_theta2(i, n_samples));
    std::vector<int> minima;
    for (int i = 0; i < n_samples; ++i) {
      const double l = f[(i + n_samples - 1) % n_samples], r = f[(i + 1) % n_samples];
      if (f[i] <= l && f[i] <= r) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(), [&](int a, int b) { return f[a] < f[b]; });
    if (minima.size() > 4) minima.resize(4);

    for (int i : minima) {
      const double centre = detail::sample_theta2(i, n_samples);
      const auto [t2, value] = boost::math::tools::brent_find_minima(
          objective, centre - h, centre + h, std::numeric_limits<double>::digits);
      if (value < best_value) {
        best_value = value;
        const double t3 = detail::singular_theta3(np, t2, br.shift);
        const CrossSectionPoint loc = detail::image(np, t2, t3);
        best = QuadruplePoint{{loc.rho * params.a1(), loc.z * params.a1()},
                              detail::local_residuals(np, t2, t3),
                              br.id,
                              wrap_angle(t2),
                              t3};
      }
    }
  }
  return best;
}

struct RegionProbe {
  CrossSectionPoint point;  // caller's units
  bool inside_ws1 = false;
  bool inside_ws2 = false;
  double clearance = 0.0;  // distance to the nearest boundary sample
};

/// One probe per region label (inside/outside WS1 x inside/outside WS2),
/// chosen as the grid point of that region farthest from the sampled boundary.
/// Inclusion uses even-odd ray casting against the boundary polylines.
inline std::vector<RegionProbe> region_probes(const DhParams& params, int n_samples = 1024,
                                              int grid_res = 80) {
  const WorkspaceBoundary wb = boundary_cross_section(params, n_samples);
  auto inside = [](const std::vector<CrossSectionPoint>& poly, double rho, double z) {
    bool in = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const auto& a = poly[i];
      const auto& b = poly[j];
      if ((a.z > z) != (b.z > z)) {
        const double x = a.rho + (z - a.z) * (b.rho - a.rho) / (b.z - a.z);
        if (rho < x) in = !in;
      }
    }
    return in;
  };
  const auto& ws1 = wb.curves.at(0).branch == BoundaryId::WS1 ? wb.curves.at(0) : wb.curves.at(1);
  const auto& ws2 = wb.curves.at(0).branch == BoundaryId::WS2 ? wb.curves.at(0) : wb.curves.at(1);

  const double reach = params.reach();
  std::array<std::optional<RegionProbe>, 4> best;
  for (int i = 0; i < grid_res; ++i) {
    for (int j = 0; j < 2 * grid_res; ++j) {
      const double rho = (i + 0.5) * reach / grid_res;
      const double z = -reach + (j + 0.5) * reach / grid_res;
      const bool in1 = inside(ws1.samples, rho, z);
      const bool in2 = inside(ws2.samples, rho, z);
      double clear = std::numeric_limits<double>::infinity();
      for (const auto* c : {&ws1, &ws2}) {
        for (const auto& p : c->samples) clear = std::min(clear, std::hypot(p.rho - rho, p.z - z));
      }
      auto& slot = best[(in1 ? 1 : 0) + (in2 ? 2 : 0)];
      if (!slot || clear > slot->clearance) slot = RegionProbe{{rho, z}, in1, in2, clear};
    }
  }
  std::vector<RegionProbe> out;
  for (const auto& b : best) {
    if (b) out.push_back(*b);
  }
  return out;
}

}  // namespace orthoiks
