#pragma once

// Manipulator model for orthogonal 3R positioning chains.
//
// The chain is described by standard Denavit-Hartenberg transforms
//   T_i = Rot_z(theta_i) * Trans_z(d_i) * Trans_x(a_i) * Rot_x(alpha_i)
// with alpha_1 = -90 deg, alpha_2 = +90 deg, alpha_3 = 0 and d_1 = 0. The
// operation point is the origin of frame 3.

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orthoiks {

inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double angle) {
  double r = angle - 2.0 * kPi * std::floor((angle + kPi) / (2.0 * kPi));
  if (r >= kPi) r -= 2.0 * kPi;
  if (r < -kPi) r += 2.0 * kPi;
  return r;
}

/// Length parameters of an orthogonal 3R chain. All values finite and >= 0.
class DhParams {
 public:
  static constexpr double kAlpha1 = -kPi / 2;
  static constexpr double kAlpha2 = kPi / 2;

  DhParams(double a1, double a2, double a3, double d2, double d3 = 0.0)
      : a1_(a1), a2_(a2), a3_(a3), d2_(d2), d3_(d3) {
    check("a1", a1);
    check("a2", a2);
    check("a3", a3);
    check("d2", d2);
    check("d3", d3);
  }

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double a3() const { return a3_; }
  double d2() const { return d2_; }
  double d3() const { return d3_; }

  bool normalized() const { return a1_ == 1.0; }

  /// Sum of all lengths; no point of the workspace is farther from the origin.
  double reach() const { return a1_ + a2_ + a3_ + d2_ + d3_; }

  DhParams scaled(double k) const {
    return DhParams(k * a1_, k * a2_, k * a3_, k * d2_, k * d3_);
  }

  DhParams with_a3(double a3) const { return DhParams(a1_, a2_, a3, d2_, d3_); }
  DhParams with_d3(double d3) const { return DhParams(a1_, a2_, a3_, d2_, d3); }

  friend bool operator==(const DhParams&, const DhParams&) = default;

 private:
  static void check(const char* name, double v) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string("DhParams: ") + name +
                                  " must be finite and nonnegative");
    }
  }

  double a1_, a2_, a3_, d2_, d3_;
};

/// Joint angles in radians, each wrapped into [-pi, pi).
struct JointConfig {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;

  JointConfig() = default;
  JointConfig(double t1, double t2, double t3)
      : theta1(wrap_angle(t1)), theta2(wrap_angle(t2)), theta3(wrap_angle(t3)) {}

  friend bool operator==(const JointConfig&, const JointConfig&) = default;
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  friend bool operator==(const CartesianPoint&, const CartesianPoint&) = default;
};

/// Point of the half cross-section (rho = sqrt(x^2 + y^2), z).
struct CrossSectionPoint {
  double rho = 0.0;
  double z = 0.0;

  friend bool operator==(const CrossSectionPoint&, const CrossSectionPoint&) = default;
};

/// Divides every length by a1.
inline DhParams normalize(const DhParams& params) {
  if (!(params.a1() > 0.0)) {
    throw std::domain_error("normalize: a1 must be strictly positive");
  }
  if (params.normalized()) return params;
  const double a1 = params.a1();
  return DhParams(1.0, params.a2() / a1, params.a3() / a1, params.d2() / a1, params.d3() / a1);
}

inline Eigen::Isometry3d dh_transform(double theta, double d, double a, double alpha) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.rotate(Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitZ()));
  t.translate(Eigen::Vector3d(a, 0.0, d));
  t.rotate(Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitX()));
  return t;
}

inline CartesianPoint forward_kinematics(const DhParams& params, const JointConfig& q) {
  const Eigen::Isometry3d chain =
      dh_transform(q.theta1, 0.0, params.a1(), DhParams::kAlpha1) *
      dh_transform(q.theta2, params.d2(), params.a2(), DhParams::kAlpha2) *
      dh_transform(q.theta3, params.d3(), params.a3(), 0.0);
  const Eigen::Vector3d p = chain.translation();
  return {p.x(), p.y(), p.z()};
}

/// Position of the operation point with theta1 = 0, expanded in closed form.
/// Agrees with forward_kinematics(params, {0, theta2, theta3}).
inline CartesianPoint planar_position(const DhParams& params, double theta2, double theta3) {
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const double c3 = std::cos(theta3), s3 = std::sin(theta3);
  const double u = params.a2() + params.a3() * c3;
  return {params.a1() + c2 * u + params.d3() * s2,
          params.a3() * s3 + params.d2(),
          -s2 * u + params.d3() * c2};
}

inline CrossSectionPoint cross_section(const CartesianPoint& p) {
  return {std::hypot(p.x, p.y), p.z};
}

/// Closed-form Jacobian determinant for d3 = 0:
///   (a2 + c3 a3) (c2 (s3 a2 - c3 d2) + s3 a1).
/// The determinant of the positional Jacobian of forward_kinematics equals
/// a3 times this value, so sign and zero set coincide. Independent of theta1.
inline double jacobian_det(const DhParams& params, const JointConfig& q) {
  if (params.d3() != 0.0) {
    throw std::domain_error("jacobian_det: closed form requires d3 = 0");
  }
  const double c2 = std::cos(q.theta2);
  const double c3 = std::cos(q.theta3), s3 = std::sin(q.theta3);
  return (params.a2() + c3 * params.a3()) *
         (c2 * (s3 * params.a2() - c3 * params.d2()) + s3 * params.a1());
}

}  // namespace orthoiks
