#pragma once

// Inverse kinematics through the quartic in t = tan(theta3 / 2).

#include "orthoiks/geometry.hpp"
#include "orthoiks/quartic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace orthoiks {

/// V and R of a workspace point. The quartic depends on the point only
/// through these two numbers.
struct PointInvariants {
  double V = 0.0;
  double R = 0.0;
};

namespace detail {

inline void require_normalized(const DhParams& params, const char* who) {
  if (!params.normalized()) {
    throw std::invalid_argument(std::string(who) + ": parameters must be normalized (a1 = 1)");
  }
}

}  // namespace detail

/// V = -x^2 - y^2 - z^2 - 1 + a2^2 + d2^2 + a3^2 (+ d3^2), R = x^2 + y^2.
/// The d3 contribution is added last, so V(d3) == V(0) + d3^2 bit for bit.
inline PointInvariants point_invariants(const DhParams& params, const CartesianPoint& p) {
  detail::require_normalized(params, "point_invariants");
  const double r = p.x * p.x + p.y * p.y;
  const double v0 = -r - p.z * p.z - 1.0 + params.a2() * params.a2() +
                    params.d2() * params.d2() + params.a3() * params.a3();
  return {v0 + params.d3() * params.d3(), r};
}

inline QuarticCoeffs quartic_coeffs(const DhParams& params, const PointInvariants& inv) {
  detail::require_normalized(params, "quartic_coeffs");
  const double a2 = params.a2(), a3 = params.a3(), d2 = params.d2();
  const double V = inv.V, R = inv.R;
  const double a2a3 = a2 * a3;
  QuarticCoeffs c;
  c.c0 = a2a3 * a2a3 - a2a3 * V - R + V * V / 4 + d2 * d2;
  c.c1 = a3 * d2 * (-2 * a2a3 + V + 2) / 2;
  c.c2 = -a2a3 * a2a3 / 3 + 2 * a3 * a3 * d2 * d2 / 3 + 2 * a3 * a3 / 3 - R / 3 + V * V / 12 +
         d2 * d2 / 3;
  c.c3 = a3 * d2 * (2 * a2a3 + V + 2) / 2;
  c.c4 = a2a3 * a2a3 + a2a3 * V - R + V * V / 4 + d2 * d2;
  return c;
}

inline QuarticCoeffs quartic_coeffs(const DhParams& params, const CartesianPoint& p) {
  return quartic_coeffs(params, point_invariants(params, p));
}

/// Number of distinct inverse kinematic solutions at any point with the given
/// cross-section coordinates (embedded as x = rho, y = 0).
/// Throws IdenticallyZeroError at points reached by a continuum of
/// configurations; with a2, a3, d2 > 0 this cannot happen.
inline int count_iks(const DhParams& params, const CrossSectionPoint& sp,
                     QuarticSolveOptions opts = {}) {
  const DhParams np = normalize(params);
  const double k = 1.0 / params.a1();
  const CartesianPoint p{sp.rho * k, 0.0, sp.z * k};
  if (p.norm() > np.reach() * (1.0 + 1e-12)) return 0;
  return solve_quartic_real(quartic_coeffs(np, p), opts).distinct();
}

struct IkSolution {
  JointConfig q;
  double residual = 0.0;   // |FK(q) - p| in the caller's length unit
  bool degenerate = false;  // theta2 undetermined by the 2x2 system
};

namespace detail {

// Solves a cos(x) + b sin(x) = c for x; up to two solutions.
inline std::vector<double> solve_trig_linear(double a, double b, double c) {
  const double amp = std::hypot(a, b);
  if (amp == 0.0) return {};
  const double ratio = c / amp;
  if (std::abs(ratio) > 1.0 + 1e-9) return {};
  const double phase = std::atan2(b, a);
  const double spread = std::acos(std::clamp(ratio, -1.0, 1.0));
  return {phase + spread, phase - spread};
}

inline double fk_residual(const DhParams& params, const JointConfig& q, const CartesianPoint& p) {
  const CartesianPoint f = forward_kinematics(params, q);
  return std::sqrt((f.x - p.x) * (f.x - p.x) + (f.y - p.y) * (f.y - p.y) +
                   (f.z - p.z) * (f.z - p.z));
}

// Gauss-Newton on the full position residual; keeps only improving steps.
inline JointConfig polish_ik(const DhParams& params, JointConfig q, const CartesianPoint& p) {
  double best = fk_residual(params, q, p);
  for (int it = 0; it < 4 && best > 0.0; ++it) {
    const double h = 1e-7;
    Eigen::Matrix3d jac;
    const CartesianPoint f0 = forward_kinematics(params, q);
    for (int j = 0; j < 3; ++j) {
      double dq[3] = {0, 0, 0};
      dq[j] = h;
      const CartesianPoint fp = forward_kinematics(
          params, JointConfig(q.theta1 + dq[0], q.theta2 + dq[1], q.theta3 + dq[2]));
      const CartesianPoint fm = forward_kinematics(
          params, JointConfig(q.theta1 - dq[0], q.theta2 - dq[1], q.theta3 - dq[2]));
      jac.col(j) = Eigen::Vector3d(fp.x - fm.x, fp.y - fm.y, fp.z - fm.z) / (2 * h);
    }
    const Eigen::Vector3d r(p.x - f0.x, p.y - f0.y, p.z - f0.z);
    const Eigen::Vector3d step = jac.completeOrthogonalDecomposition().solve(r);
    if (!step.allFinite()) break;
    const JointConfig next(q.theta1 + step(0), q.theta2 + step(1), q.theta3 + step(2));
    const double res = fk_residual(params, next, p);
    if (!(res < best)) break;
    q = next;
    best = res;
  }
  return q;
}

}  // namespace detail

/// All joint configurations reaching p. For each real root t of the quartic
/// (plus theta3 = pi for a root at infinity), theta2 follows from the linear
/// system given by the z coordinate and the squared planar radius, and theta1
/// from the azimuth. Candidates are kept when |FK(q) - p| < tol * a1.
inline std::vector<IkSolution> inverse_kinematics(const DhParams& params, const CartesianPoint& p,
                                                  double tol = 1e-6) {
  const DhParams np = normalize(params);
  const double a1 = params.a1();
  const CartesianPoint pn{p.x / a1, p.y / a1, p.z / a1};
  std::vector<IkSolution> out;
  if (pn.norm() > np.reach() * (1.0 + 1e-12)) return out;

  std::vector<double> theta3s;
  QuarticRoots roots;
  try {
    roots = solve_quartic_real(quartic_coeffs(np, pn));
  } catch (const IdenticallyZeroError&) {
    return out;
  }
  for (const auto& c : roots.clusters) theta3s.push_back(2.0 * std::atan(c.value));
  if (roots.infinite_multiplicity > 0) theta3s.push_back(kPi);

  const double rho2 = pn.x * pn.x + pn.y * pn.y;
  const double d3 = np.d3();
  for (double th3 : theta3s) {
    const double c3 = std::cos(th3), s3 = std::sin(th3);
    const double u = np.a2() + np.a3() * c3;
    const double y0 = np.a3() * s3 + np.d2();
    // z:      d3 c2 - u s2 = z
    // radius: 2 (u c2 + d3 s2) = rho^2 - 1 - y0^2 - u^2 - d3^2 + z^2
    const double rhs = rho2 - 1.0 - y0 * y0 - u * u - d3 * d3 + pn.z * pn.z;
    const double det = 2.0 * (d3 * d3 + u * u);
    std::vector<double> theta2s;
    bool degenerate = false;
    if (det > 1e-12) {
      const double c2 = (2.0 * d3 * pn.z + u * rhs) / det;
      const double s2 = (d3 * rhs - 2.0 * u * pn.z) / det;
      theta2s.push_back(std::atan2(s2, c2));
    } else {
      degenerate = true;
      for (double t : detail::solve_trig_linear(d3, -u, pn.z)) theta2s.push_back(t);
      for (double t : detail::solve_trig_linear(2 * u, 2 * d3, rhs)) theta2s.push_back(t);
      if (theta2s.empty()) theta2s.push_back(0.0);
    }
    for (double th2 : theta2s) {
      const CartesianPoint planar = planar_position(np, th2, th3);
      const double th1 = std::atan2(pn.y, pn.x) - std::atan2(planar.y, planar.x);
      JointConfig q(th1, th2, th3);
      q = detail::polish_ik(np, q, pn);
      const double res = detail::fk_residual(np, q, pn);
      if (!(res < tol)) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const IkSolution& s) {
        return std::abs(wrap_angle(s.q.theta1 - q.theta1)) < 1e-9 &&
               std::abs(wrap_angle(s.q.theta2 - q.theta2)) < 1e-9 &&
               std::abs(wrap_angle(s.q.theta3 - q.theta3)) < 1e-9;
      });
      if (!dup) out.push_back({q, res * a1, degenerate});
    }
  }
  return out;
}

}  // namespace orthoiks
