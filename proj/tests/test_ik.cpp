#include "orthoiks/ik.hpp"
#include "orthoiks/workspace.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace orthoiks;

namespace {

// P at t = tan(theta / 2), evaluated homogeneously and divided by max|c|.
double relative_residual(const QuarticCoeffs& c, double theta) {
  const double x = std::cos(theta / 2), y = std::sin(theta / 2);
  const double v = c.c0 * std::pow(y, 4) + 4 * c.c1 * std::pow(y, 3) * x +
                   6 * c.c2 * y * y * x * x + 4 * c.c3 * y * std::pow(x, 3) +
                   c.c4 * std::pow(x, 4);
  return std::abs(v) / c.scale();
}

}  // namespace

TEST(PointInvariants, Examples) {
  const DhParams p(1, 2, 1.5, 1);
  const auto a = point_invariants(p, {0, 0, 0});
  EXPECT_DOUBLE_EQ(a.V, 6.25);
  EXPECT_DOUBLE_EQ(a.R, 0.0);
  const auto b = point_invariants(p, {1, 0, 0});
  EXPECT_DOUBLE_EQ(b.V, 5.25);
  EXPECT_DOUBLE_EQ(b.R, 1.0);
  EXPECT_DOUBLE_EQ(point_invariants(p.with_d3(2), {1, 0, 0}).V, 9.25);
}

TEST(PointInvariants, RequiresNormalizedParams) {
  EXPECT_THROW(point_invariants(DhParams(2, 1, 1, 1), {0, 0, 0}), std::invalid_argument);
}

TEST(QuarticCoeffs, CancellationIdentities) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> len(0.0, 3.0), pt(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng), len(rng));
    const auto inv = point_invariants(p, {pt(rng), pt(rng), pt(rng)});
    const auto c = quartic_coeffs(p, inv);
    const double s = c.scale();
    EXPECT_NEAR(c.c0 - c.c4, -2 * p.a2() * p.a3() * inv.V, 1e-12 * s);
    EXPECT_NEAR(c.c3 - c.c1, 2 * p.a2() * p.a3() * p.a3() * p.d2(), 1e-12 * s);
  }
}

TEST(QuarticCoeffs, HalfAngleOfForwardKinematicsIsARoot) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> len(0.0, 3.0), ang(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng), i % 2 ? len(rng) : 0.0);
    const JointConfig q(ang(rng), ang(rng), ang(rng));
    const auto c = quartic_coeffs(p, forward_kinematics(p, q));
    EXPECT_LT(relative_residual(c, q.theta3), 1e-8);
  }
}

TEST(QuarticCoeffs, DependOnThePointOnlyThroughVAndR) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> len(0.0, 3.0), pt(-4.0, 4.0), ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng), len(rng));
    const CartesianPoint a{pt(rng), pt(rng), pt(rng)};
    // Same R and |p|: rotate about z and flip the sign of z.
    const double phi = ang(rng);
    const CartesianPoint b{a.x * std::cos(phi) - a.y * std::sin(phi),
                           a.x * std::sin(phi) + a.y * std::cos(phi), -a.z};
    const auto ca = quartic_coeffs(p, a), cb = quartic_coeffs(p, b);
    const double s = ca.scale();
    EXPECT_NEAR(ca.c0, cb.c0, 1e-12 * s);
    EXPECT_NEAR(ca.c1, cb.c1, 1e-12 * s);
    EXPECT_NEAR(ca.c2, cb.c2, 1e-12 * s);
    EXPECT_NEAR(ca.c3, cb.c3, 1e-12 * s);
    EXPECT_NEAR(ca.c4, cb.c4, 1e-12 * s);
  }
}

TEST(QuarticCoeffs, D3ShiftInvariance) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> len(0.0, 3.0), pt(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const DhParams base(1, len(rng), len(rng), len(rng));
    const CartesianPoint x{pt(rng), pt(rng), pt(rng)};
    const auto inv0 = point_invariants(base, x);
    for (double d3 : {0.5, 2.0}) {
      const auto inv = point_invariants(base.with_d3(d3), x);
      EXPECT_EQ(inv.V, inv0.V + d3 * d3);
      EXPECT_EQ(quartic_coeffs(base.with_d3(d3), x),
                quartic_coeffs(base, PointInvariants{inv0.V + d3 * d3, inv0.R}));
    }
  }
}

TEST(CountIks, BeyondReachIsZero) {
  const DhParams p(1, 2, 1.5, 1);
  EXPECT_EQ(count_iks(p, {5.6, 0}), 0);
  EXPECT_EQ(count_iks(p, {0, -5.6}), 0);
}

TEST(CountIks, ReachablePointsHaveAtLeastOneSolution) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> len(0.1, 3.0), ang(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng));
    const auto sp = cross_section(forward_kinematics(p, JointConfig(ang(rng), ang(rng), ang(rng))));
    EXPECT_GE(count_iks(p, sp), 1);
  }
}

TEST(CountIks, UsesCallerUnits) {
  const DhParams p(1, 2, 1.5, 1);
  const CrossSectionPoint sp{2.30313, -0.034375};
  EXPECT_EQ(count_iks(p, sp), count_iks(p.scaled(3), {3 * sp.rho, 3 * sp.z}));
}

TEST(CountIks, EvenAtGenericPoints) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> len(0.1, 3.0), u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const DhParams p(1, len(rng), len(rng), len(rng));
    const CrossSectionPoint sp{u(rng) * p.reach(), (2 * u(rng) - 1) * p.reach()};
    const auto inv = point_invariants(p, {sp.rho, 0, sp.z});
    const auto roots = solve_quartic_real(quartic_coeffs(p, inv));
    if (roots.max_multiplicity() > 1) continue;  // on or near a boundary
    ++checked;
    EXPECT_EQ(count_iks(p, sp) % 2, 0);
  }
  EXPECT_GT(checked, 1900);
}

TEST(InverseKinematics, RoundTrip) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> a1d(0.5, 2.0), len(0.1, 3.0), ang(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const double a1 = a1d(rng);
    const DhParams p(a1, a1 * len(rng), a1 * len(rng), a1 * len(rng), i % 2 ? a1 * len(rng) : 0.0);
    const JointConfig q(ang(rng), ang(rng), ang(rng));
    const auto x = forward_kinematics(p, q);
    const auto sols = inverse_kinematics(p, x);
    double best = 1.0;
    for (const auto& s : sols) {
      best = std::min(best, std::max({std::abs(wrap_angle(s.q.theta1 - q.theta1)),
                                      std::abs(wrap_angle(s.q.theta2 - q.theta2)),
                                      std::abs(wrap_angle(s.q.theta3 - q.theta3))}));
      EXPECT_LT(s.residual, 1e-8 * a1);
      // Every returned theta3 is a root of the quartic.
      const auto c = quartic_coeffs(normalize(p), {x.x / a1, x.y / a1, x.z / a1});
      EXPECT_LT(relative_residual(c, s.q.theta3), 1e-8);
    }
    EXPECT_LT(best, 1e-8) << "sample " << i;
  }
}

TEST(InverseKinematics, UnreachableIsEmpty) {
  EXPECT_TRUE(inverse_kinematics(DhParams(1, 2, 1.5, 1), {4, 4, 4}).empty());
}

TEST(InverseKinematics, FourSolutionsInsideTheInnerRegion) {
  const DhParams p(1, 2, 1.5, 1);
  for (const auto& probe : region_probes(p)) {
    if (!(probe.inside_ws1 && probe.inside_ws2)) continue;
    ASSERT_EQ(count_iks(p, probe.point), 4);
    const auto sols = inverse_kinematics(p, {probe.point.rho, 0, probe.point.z});
    ASSERT_EQ(sols.size(), 4u);
    for (const auto& s : sols) {
      EXPECT_LT(s.residual, 1e-8);
      EXPECT_FALSE(s.degenerate);
    }
  }
}

TEST(InverseKinematics, PointOnSecondAxisIsDegenerate) {
  // a2 < a3: with c3 = -a2/a3 the operation point lies on the second joint
  // axis and theta2 is free.
  const DhParams p(1, 3, 4, 3);
  const double t3 = std::acos(-3.0 / 4.0);
  const auto x = forward_kinematics(p, JointConfig(0.3, 1.0, t3));
  const auto sols = inverse_kinematics(p, x);
  bool any_degenerate = false;
  for (const auto& s : sols) {
    EXPECT_LT(s.residual, 1e-6);
    any_degenerate = any_degenerate || s.degenerate;
  }
  EXPECT_TRUE(sols.empty() || any_degenerate);
}

TEST(BoundarySamples, CarryADoubleRoot) {
  for (const DhParams& p : {DhParams(1, 2, 1.5, 1), DhParams(1, 1.5, 0.9, 0.5), DhParams(1, 0.5, 0.15, 0.21)}) {
    for (const auto& c : singularity_curves(p, 256)) {
      if (c.branch != BranchId::S1 && c.branch != BranchId::S2) continue;
      for (const auto& s : c.samples) {
        ASSERT_LT(std::abs(jacobian_det(p, JointConfig(0, s.theta2, s.theta3))), 1e-9);
        const auto roots = solve_quartic_real(
            quartic_coeffs(p, planar_position(p, s.theta2, s.theta3)));
        EXPECT_GE(roots.max_multiplicity(), 2);
      }
    }
  }
}

TEST(InteriorPoints, OnlySimpleRoots) {
  const DhParams p(1, 2, 1.5, 1);
  for (const auto& probe : region_probes(p)) {
    const auto roots = solve_quartic_real(quartic_coeffs(p, CartesianPoint{probe.point.rho, 0, probe.point.z}));
    EXPECT_LE(roots.max_multiplicity(), 1);
  }
}
