#include "orthoiks/geometry.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace orthoiks;

namespace {

// Positional Jacobian determinant of forward_kinematics by central differences.
double numerical_det(const DhParams& p, const JointConfig& q, double h = 1e-6) {
  Eigen::Matrix3d jac;
  const double base[3] = {q.theta1, q.theta2, q.theta3};
  for (int j = 0; j < 3; ++j) {
    double plus[3] = {base[0], base[1], base[2]}, minus[3] = {base[0], base[1], base[2]};
    plus[j] += h;
    minus[j] -= h;
    const auto fp = forward_kinematics(p, JointConfig(plus[0], plus[1], plus[2]));
    const auto fm = forward_kinematics(p, JointConfig(minus[0], minus[1], minus[2]));
    jac.col(j) = Eigen::Vector3d(fp.x - fm.x, fp.y - fm.y, fp.z - fm.z) / (2 * h);
  }
  return jac.determinant();
}

}  // namespace

TEST(DhParams, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(DhParams(1, -0.1, 1, 1), std::invalid_argument);
  EXPECT_THROW(DhParams(1, 1, 1, 1, -1), std::invalid_argument);
  EXPECT_THROW(DhParams(NAN, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(DhParams(1, INFINITY, 1, 1), std::invalid_argument);
  EXPECT_NO_THROW(DhParams(0, 0, 0, 0));
}

TEST(DhParams, NormalizedFlag) {
  EXPECT_TRUE(DhParams(1, 2, 3, 4).normalized());
  EXPECT_FALSE(DhParams(2, 2, 3, 4).normalized());
  EXPECT_DOUBLE_EQ(DhParams(1, 2, 1.5, 1, 0.5).reach(), 6.0);
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(DhParams(1, 2, 1.5, 1)), DhParams(1, 2, 1.5, 1));
  EXPECT_EQ(normalize(DhParams(2, 4, 3, 2)), DhParams(1, 2, 1.5, 1));
  const DhParams n = normalize(DhParams(0.5, 0.75, 0.25, 0.105));
  EXPECT_DOUBLE_EQ(n.a1(), 1.0);
  EXPECT_DOUBLE_EQ(n.a2(), 1.5);
  EXPECT_DOUBLE_EQ(n.a3(), 0.5);
  EXPECT_DOUBLE_EQ(n.d2(), 0.21);
  EXPECT_TRUE(n.normalized());
}

TEST(Normalize, RejectsZeroA1) { EXPECT_THROW(normalize(DhParams(0, 1, 1, 1)), std::domain_error); }

TEST(WrapAngle, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), -kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_angle(-7.0), -7.0 + 2 * kPi, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_angle(0.3), 0.3);
  EXPECT_EQ(JointConfig(4.0, 0, 0).theta1, wrap_angle(4.0));
}

TEST(ForwardKinematics, ZeroConfigurationRegression) {
  // Chain product of the standard transforms at q = 0.
  const auto p = forward_kinematics(DhParams(1, 2, 1.5, 1), JointConfig(0, 0, 0));
  EXPECT_NEAR(p.x, 4.5, 1e-14);
  EXPECT_NEAR(p.y, 1.0, 1e-14);
  EXPECT_NEAR(p.z, 0.0, 1e-14);
  EXPECT_LE(p.norm(), 1 + 2 + 1.5 + 1);
}

TEST(ForwardKinematics, DegenerateChainStaysOnFirstLinkCircle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const auto p = forward_kinematics(DhParams(1.3, 0, 0, 0), JointConfig(ang(rng), ang(rng), ang(rng)));
    EXPECT_NEAR(cross_section(p).rho, 1.3, 1e-14);
    EXPECT_NEAR(p.z, 0.0, 1e-14);
  }
}

TEST(ForwardKinematics, PlanarClosedFormMatchesChain) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const DhParams p(len(rng) + 0.1, len(rng), len(rng), len(rng), len(rng));
    const double t2 = ang(rng), t3 = ang(rng);
    const auto a = forward_kinematics(p, JointConfig(0, t2, t3));
    const auto b = planar_position(p, t2, t3);
    EXPECT_NEAR(a.x, b.x, 1e-12);
    EXPECT_NEAR(a.y, b.y, 1e-12);
    EXPECT_NEAR(a.z, b.z, 1e-12);
  }
}

TEST(ForwardKinematics, ScaleEquivariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.0, 3.0), k(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const DhParams p(len(rng), len(rng), len(rng), len(rng), len(rng));
    const JointConfig q(ang(rng), ang(rng), ang(rng));
    const double s = k(rng);
    const auto a = forward_kinematics(p.scaled(s), q);
    const auto b = forward_kinematics(p, q);
    EXPECT_NEAR(a.x, s * b.x, 1e-12 * s * p.reach());
    EXPECT_NEAR(a.y, s * b.y, 1e-12 * s * p.reach());
    EXPECT_NEAR(a.z, s * b.z, 1e-12 * s * p.reach());
  }
}

TEST(ForwardKinematics, CrossSectionIndependentOfTheta1) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const DhParams p(len(rng), len(rng), len(rng), len(rng), len(rng));
    const double t2 = ang(rng), t3 = ang(rng);
    const auto a = cross_section(forward_kinematics(p, JointConfig(ang(rng), t2, t3)));
    const auto b = cross_section(forward_kinematics(p, JointConfig(ang(rng), t2, t3)));
    EXPECT_NEAR(a.rho, b.rho, 1e-12);
    EXPECT_NEAR(a.z, b.z, 1e-12);
  }
}

TEST(CrossSection, Examples) {
  EXPECT_EQ(cross_section({0, 0, 5}), (CrossSectionPoint{0, 5}));
  EXPECT_EQ(cross_section({3, 4, 1}), (CrossSectionPoint{5, 1}));
  EXPECT_EQ(cross_section({-3, -4, 1}), (CrossSectionPoint{5, 1}));
}

TEST(JacobianDet, DirectSubstitution) {
  EXPECT_DOUBLE_EQ(jacobian_det(DhParams(1, 2, 1.5, 1), JointConfig(0, 0, 0)), -3.5);
}

TEST(JacobianDet, VanishesOnHorizontalLines) {
  const DhParams p(1, 3, 4, 3);
  const double t3 = std::acos(-3.0 / 4.0);
  for (double t2 = -3.0; t2 < 3.0; t2 += 0.25) {
    EXPECT_NEAR(jacobian_det(p, JointConfig(0, t2, t3)), 0.0, 1e-12);
    EXPECT_NEAR(jacobian_det(p, JointConfig(0, t2, -t3)), 0.0, 1e-12);
  }
}

TEST(JacobianDet, IndependentOfTheta1) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const DhParams p(len(rng), len(rng), len(rng), len(rng));
    const double t2 = ang(rng), t3 = ang(rng);
    EXPECT_EQ(jacobian_det(p, JointConfig(ang(rng), t2, t3)),
              jacobian_det(p, JointConfig(ang(rng), t2, t3)));
  }
}

TEST(JacobianDet, RequiresZeroD3) {
  EXPECT_THROW(jacobian_det(DhParams(1, 2, 1.5, 1, 0.5), JointConfig()), std::domain_error);
}

TEST(JacobianDet, EqualsA3TimesNumericalDeterminant) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.1, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const DhParams p(len(rng), len(rng), len(rng), len(rng));
    const JointConfig q(ang(rng), ang(rng), ang(rng));
    const double closed = jacobian_det(p, q);
    const double numeric = numerical_det(p, q);
    const double scale = std::pow(p.reach(), 3);
    EXPECT_NEAR(numeric, p.a3() * closed, 1e-7 * scale);
  }
}

TEST(JacobianDet, ZeroSetAgreesWithNumericalJacobian) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi), len(0.1, 3.0);
  std::bernoulli_distribution on_curve(0.5);
  for (int i = 0; i < 1000; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng));
    const double t2 = ang(rng);
    double t3 = ang(rng);
    if (on_curve(rng)) {
      // Root of the second factor: sin(t3)(c2 a2 + a1) = cos(t3) c2 d2.
      const double c2 = std::cos(t2);
      t3 = std::atan2(c2 * p.d2(), c2 * p.a2() + p.a1());
    }
    const JointConfig q(ang(rng), t2, t3);
    const double scale = std::pow(p.reach(), 3);
    const bool closed_zero = std::abs(jacobian_det(p, q)) < 1e-9;
    const bool numeric_zero = std::abs(numerical_det(p, q)) < 1e-6 * scale;
    EXPECT_EQ(closed_zero, numeric_zero) << "config " << i;
  }
}
