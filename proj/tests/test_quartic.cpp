#include "orthoiks/quartic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace orthoiks;

namespace {

// Binomially weighted coefficients of prod (t - r_i) for four roots.
QuarticCoeffs from_roots(double r1, double r2, double r3, double r4) {
  const double e1 = r1 + r2 + r3 + r4;
  const double e2 = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4;
  const double e3 = r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4;
  const double e4 = r1 * r2 * r3 * r4;
  return {1.0, -e1 / 4, e2 / 6, -e3 / 4, e4};
}

}  // namespace

TEST(SolveQuartic, QuadrupleRoot) {
  const auto r = solve_quartic_real({1, -1, 1, -1, 1});
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_NEAR(r.clusters[0].value, 1.0, 1e-6);
  EXPECT_EQ(r.clusters[0].multiplicity, 4);
  EXPECT_EQ(r.distinct(), 1);
  EXPECT_EQ(r.max_multiplicity(), 4);
}

TEST(SolveQuartic, TwoDoubleRoots) {
  const auto r = solve_quartic_real({1, 0, -1.0 / 3.0, 0, 1});
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_NEAR(r.clusters[0].value, -1.0, 1e-7);
  EXPECT_EQ(r.clusters[0].multiplicity, 2);
  EXPECT_NEAR(r.clusters[1].value, 1.0, 1e-7);
  EXPECT_EQ(r.clusters[1].multiplicity, 2);
}

TEST(SolveQuartic, TripleRoot) {
  const auto r = solve_quartic_real({1, -0.5, 0, 0.5, -1});
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_NEAR(r.clusters[0].value, -1.0, 1e-10);
  EXPECT_EQ(r.clusters[0].multiplicity, 1);
  EXPECT_NEAR(r.clusters[1].value, 1.0, 1e-5);
  EXPECT_EQ(r.clusters[1].multiplicity, 3);
}

TEST(SolveQuartic, RandomSimpleRealRoots) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> roots = {u(rng), u(rng), u(rng), u(rng)};
    std::sort(roots.begin(), roots.end());
    bool separated = true;
    for (int k = 1; k < 4; ++k) separated = separated && roots[k] - roots[k - 1] > 0.05;
    if (!separated) continue;
    const auto r = solve_quartic_real(from_roots(roots[0], roots[1], roots[2], roots[3]));
    ASSERT_EQ(r.clusters.size(), 4u);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(r.clusters[k].value, roots[k], 1e-10);
      EXPECT_EQ(r.clusters[k].multiplicity, 1);
    }
  }
}

TEST(SolveQuartic, ComplexPairsAreDropped) {
  // (t^2 + 1)(t - 2)(t + 3)
  const double m[5] = {1, 1, -5, 1, -6};
  const auto r = solve_quartic_real({m[0], m[1] / 4, m[2] / 6, m[3] / 4, m[4]});
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_NEAR(r.clusters[0].value, -3.0, 1e-10);
  EXPECT_NEAR(r.clusters[1].value, 2.0, 1e-10);
  EXPECT_EQ(solve_quartic_real({1, 0, 1, 0, 1}).distinct(), 0);
}

TEST(SolveQuartic, DegreeDropReportsRootAtInfinity) {
  // 4 t^3 - 4 t = 4 t (t - 1)(t + 1), with c0 = 0.
  const auto r = solve_quartic_real({0, 1, 0, -1, 0});
  EXPECT_EQ(r.infinite_multiplicity, 1);
  EXPECT_EQ(r.clusters.size(), 3u);
  EXPECT_EQ(r.distinct(), 4);
  const auto two = solve_quartic_real({0, 0, 1, 0, -1});
  EXPECT_EQ(two.infinite_multiplicity, 2);
  EXPECT_EQ(two.distinct(), 3);
}

TEST(SolveQuartic, IdenticallyZeroThrows) {
  EXPECT_THROW(solve_quartic_real({0, 0, 0, 0, 0}), IdenticallyZeroError);
}

TEST(MultiplicityInvariants, Examples) {
  const auto quad = multiplicity_invariants({1, -1, 1, -1, 1});
  EXPECT_DOUBLE_EQ(quad.e1, 0.0);
  EXPECT_DOUBLE_EQ(quad.e2, 0.0);
  EXPECT_DOUBLE_EQ(quad.e3, 0.0);

  const auto triple = multiplicity_invariants({1, -0.5, 0, 0.5, -1});
  EXPECT_DOUBLE_EQ(triple.e1, 0.0);
  EXPECT_DOUBLE_EQ(triple.e2, 0.0);
  EXPECT_DOUBLE_EQ(triple.e3, -0.25);

  // (t^2 - 1)(t^2 - 4) = t^4 - 5 t^2 + 4
  const auto simple = multiplicity_invariants({1, 0, -5.0 / 6.0, 0, 4});
  EXPECT_NEAR(simple.e1, 4 + 3 * 25.0 / 36.0, 1e-14);
  EXPECT_NE(simple.e1, 0.0);
}

TEST(RotateHalfAngle, MovesRootsAndKeepsInvariants) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double th[4] = {ang(rng), ang(rng), ang(rng), ang(rng)};
    const QuarticCoeffs c = from_roots(std::tan(th[0] / 2), std::tan(th[1] / 2),
                                       std::tan(th[2] / 2), std::tan(th[3] / 2));
    const double alpha = ang(rng);
    const QuarticCoeffs r = rotate_half_angle(c, alpha);
    for (double t : th) {
      const double x = std::cos((t - alpha) / 2), y = std::sin((t - alpha) / 2);
      const double value = r.c0 * std::pow(y, 4) + 4 * r.c1 * std::pow(y, 3) * x +
                           6 * r.c2 * y * y * x * x + 4 * r.c3 * y * std::pow(x, 3) +
                           r.c4 * std::pow(x, 4);
      EXPECT_NEAR(value, 0.0, 1e-9 * r.max_abs());
    }
    const auto e = multiplicity_invariants(c), f = multiplicity_invariants(r);
    const double s = c.max_abs();
    EXPECT_NEAR(e.e1, f.e1, 1e-10 * s * s);
    EXPECT_NEAR(e.e2, f.e2, 1e-10 * s * s * s);
  }
}

TEST(NormalizedInvariants, ScaleFree) {
  const QuarticCoeffs c = from_roots(-1.0, 0.5, 2.0, 3.0);
  QuarticCoeffs k = c;
  for (double* v : {&k.c0, &k.c1, &k.c2, &k.c3, &k.c4}) *v *= 37.0;
  const auto a = normalized_invariants(c), b = normalized_invariants(k);
  EXPECT_NEAR(a.e1, b.e1, 1e-13);
  EXPECT_NEAR(a.e2, b.e2, 1e-13);
  EXPECT_NEAR(a.e3, b.e3, 1e-13);
}
