#pragma once

// Closed-form binary/quaternary classification of orthogonal 3R manipulators.
//
// A manipulator with strictly positive a1, a2, a3, d2 (and d3 = 0) reaches
// some point with four distinct inverse kinematic solutions iff
//
//   a3 > 1/2 sqrt(2 a2^2 + 2 d2^2 - 2 ((a2^2 + d2^2)^2 - a1^2 (a2^2 - d2^2)) / (A B))
//
// with A = sqrt((a2 + a1)^2 + d2^2), B = sqrt((a2 - a1)^2 + d2^2). The bound is
// the smaller positive root of q1 = 0 seen as a quadratic in a3^2.

#include "orthoiks/geometry.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace orthoiks {

/// Polynomial whose zero set contains every manipulator having a point with
/// four coincident solutions; quadratic in a3^2. Arguments normalized (a1 = 1).
inline double q1(double a2, double a3, double d2) {
  const double a22 = a2 * a2, a24 = a22 * a22, a26 = a24 * a22;
  const double a32 = a3 * a3, a34 = a32 * a32;
  const double d22 = d2 * d2, d24 = d22 * d22, d26 = d24 * d22;
  return a26 * a32 - 2 * a24 * a32 - a24 * a34 + 3 * d22 * a24 * a32 + a22 * a32 +
         2 * a22 * a34 - 2 * d22 * a22 * a34 + 3 * d24 * a22 * a32 - a34 + d22 * a32 -
         2 * d22 * a34 + 2 * d24 * a32 - d24 * a34 + d26 * a32 - d22 * a22;
}

namespace detail {

struct Monomial {
  int coeff;
  int a2, a3, d2;
};

// Spurious factor of the elimination, as printed (74 monomials).
inline constexpr std::array<Monomial, 74> kQ2Terms = {{
    {-543, 2, 5, 2},   {648, 4, 5, 0},    {-81, 2, 5, 0},    {-32, 1, 4, 4},
    {-8, 1, 4, 2},     {1110, 3, 4, 2},   {-25, 5, 0, 2},    {-47, 2, 3, 2},
    {-141, 2, 3, 4},   {-47, 2, 3, 8},    {-210, 6, 1, 2},   {486, 10, 3, 0},
    {972, 6, 3, 0},    {-1215, 8, 3, 0},  {-1458, 5, 4, 0},  {-8, 1, 4, 10},
    {-48, 1, 4, 6},    {-32, 1, 4, 8},    {-141, 2, 3, 6},   {243, 3, 4, 0},
    {81, 5, 2, 0},     {-162, 7, 2, 0},   {81, 9, 2, 0},     {-243, 4, 3, 0},
    {1224, 3, 4, 6},   {300, 3, 4, 8},    {1791, 3, 4, 4},   {-801, 4, 3, 2},
    {35, 4, 1, 4},     {29, 3, 2, 6},     {444, 5, 2, 2},    {58, 3, 2, 4},
    {35, 4, 1, 2},     {16, 0, 5, 12},    {80, 0, 5, 10},    {160, 0, 5, 8},
    {160, 0, 5, 6},    {80, 0, 5, 4},     {16, 0, 5, 2},     {-177, 5, 2, 4},
    {-813, 7, 2, 2},   {-2340, 8, 5, 2},  {2052, 4, 5, 4},   {-2025, 6, 5, 0},
    {3078, 8, 5, 0},   {1872, 8, 5, 4},   {-3096, 7, 4, 4},  {1440, 5, 4, 6},
    {-459, 6, 3, 4},   {72, 9, 4, 2},     {2268, 10, 5, 2},  {648, 12, 5, 0},
    {972, 11, 4, 0},   {-2268, 10, 5, 0}, {3159, 7, 4, 0},   {-1188, 5, 4, 4},
    {2601, 6, 3, 2},   {-72, 6, 5, 6},    {180, 4, 5, 6},    {2340, 6, 5, 4},
    {2352, 4, 5, 2},   {-1773, 8, 3, 2},  {-2682, 5, 4, 2},  {-1557, 6, 5, 2},
    {1872, 7, 4, 2},   {-2916, 9, 4, 0},  {29, 3, 2, 2},     {-168, 4, 5, 8},
    {-552, 2, 5, 8},   {-1227, 2, 5, 4},  {-1233, 2, 5, 6},  {-84, 2, 5, 10},
    {-1845, 4, 3, 4},  {-1287, 4, 3, 6},
}};

}  // namespace detail

/// Diagnostic only; never feeds a verdict. Not homogeneous in (a2, a3, d2),
/// so a transcription slip would not be caught by any scaling identity.
inline double q2(double a2, double a3, double d2) {
  double sum = 0.0;
  for (const auto& m : detail::kQ2Terms) {
    sum += m.coeff * std::pow(a2, m.a2) * std::pow(a3, m.a3) * std::pow(d2, m.d2);
  }
  return sum;
}

inline double q3(double a2, double a3, double d2) { return -a2 + a3 * d2 * d2 + a3; }

/// Left-hand sides of the four surfaces that bound domains of constant cusp
/// count (a1 = 1).
struct ReferenceSurfaces {
  double offset_wall;     // a2^2 - a3^2 + d2^2
  double quadruple_wall;  // identical to q1
  double minus_wall;      // the -2 a2^3 member of the pair
  double plus_wall;       // the +2 a2^3 member of the pair
};

inline ReferenceSurfaces reference_surfaces(double a2, double a3, double d2) {
  const double a22 = a2 * a2, a23 = a22 * a2, a24 = a22 * a22, a26 = a24 * a22;
  const double a32 = a3 * a3, a34 = a32 * a32;
  const double d22 = d2 * d2, d24 = d22 * d22, d26 = d24 * d22;
  ReferenceSurfaces s{};
  s.offset_wall = a22 - a32 + d22;
  // The commonly printed form of this wall omits the -d2^4 a3^4 monomial; with
  // it omitted the wall does not pass through the threshold surface.
  s.quadruple_wall = a32 * a26 - a34 * a24 + 3 * a32 * a24 * d22 - 2 * a32 * a24 +
                     2 * a34 * a22 - 2 * a34 * a22 * d22 + a32 * a22 + 3 * a32 * a22 * d24 -
                     a22 * d22 - 2 * a34 * d22 - a34 + a32 * d26 + a32 * d22 + 2 * a32 * d24 -
                     d24 * a34;
  s.minus_wall = a22 * d22 + a22 - 2 * a23 + a24 - a32 + 2 * a2 * a32 - a22 * a32;
  s.plus_wall = a22 * d22 + a22 + 2 * a23 + a24 - a32 + 2 * a2 * a32 - a22 * a32;
  return s;
}

struct ThresholdComputation {
  double A = 0.0;
  double B = 0.0;
  std::optional<double> threshold_low;   // separating branch
  std::optional<double> threshold_high;  // non-separating branch
  double radicand_low = 0.0;
  double radicand_high = 0.0;
};

namespace detail {

// No domain checks; B = 0 (a2 = a1, d2 = 0) uses the d2 -> 0 limit of the
// ratio, which is 0.
inline ThresholdComputation threshold_unchecked(double a1, double a2, double d2) {
  ThresholdComputation out;
  out.A = std::sqrt((a2 + a1) * (a2 + a1) + d2 * d2);
  out.B = std::sqrt((a2 - a1) * (a2 - a1) + d2 * d2);
  const double s = a2 * a2 + d2 * d2;
  const double num = 2.0 * (s * s - a1 * a1 * (a2 * a2 - d2 * d2));
  const double ratio = out.B > 0.0 ? num / (out.A * out.B) : 0.0;
  out.radicand_low = 2.0 * s - ratio;
  out.radicand_high = 2.0 * s + ratio;
  if (out.radicand_low >= 0.0) out.threshold_low = 0.5 * std::sqrt(out.radicand_low);
  if (out.radicand_high >= 0.0) out.threshold_high = 0.5 * std::sqrt(out.radicand_high);
  return out;
}

}  // namespace detail

/// Both explicit roots of q1 = 0 in a3, for general a1. A radicand below zero
/// leaves the corresponding threshold empty.
inline ThresholdComputation a3_threshold(double a1, double a2, double d2) {
  if (!(a1 > 0.0) || !(a2 > 0.0) || !(d2 > 0.0) || !std::isfinite(a1 + a2 + d2)) {
    throw std::domain_error("a3_threshold: a1, a2 and d2 must be strictly positive");
  }
  return detail::threshold_unchecked(a1, a2, d2);
}

enum class Verdict { Binary, Quaternary };
enum class Rule { ZeroLength, NoOffsets, A2LeA3, ThresholdCompare };
enum class D3Caveat { Exact, SufficientOnly, ConditionallyExact };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::Binary ? "binary" : "quaternary";
}

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::ZeroLength: return "zero_length";
    case Rule::NoOffsets: return "no_offsets";
    case Rule::A2LeA3: return "a2_le_a3";
    case Rule::ThresholdCompare: return "threshold_compare";
  }
  return "";
}

inline std::string_view to_string(D3Caveat c) {
  switch (c) {
    case D3Caveat::Exact: return "exact";
    case D3Caveat::SufficientOnly: return "sufficient_only";
    case D3Caveat::ConditionallyExact: return "conditionally_exact";
  }
  return "";
}

struct ClassificationResult {
  Verdict verdict = Verdict::Quaternary;
  Rule rule = Rule::ThresholdCompare;
  std::optional<double> threshold;  // present iff rule == ThresholdCompare
  D3Caveat d3_caveat = D3Caveat::Exact;
  bool on_surface = false;  // a3 within tie tolerance of the threshold

  friend bool operator==(const ClassificationResult&, const ClassificationResult&) = default;
};

struct ClassifyOptions {
  double tie_tol = 1e-9;  // relative to a2
  // Added to the threshold before comparing. Zero except in fault-injection
  // runs of the verification harness.
  double threshold_bias = 0.0;
};

/// Decision tree: any zero link length -> quaternary; no offsets -> the
/// link-length rule; a2 <= a3 -> quaternary (the threshold never exceeds a2);
/// otherwise compare a3 with the threshold. With d3 != 0 the
/// threshold comparison is only guaranteed in the quaternary direction, unless
/// d2 >= a1 / (2 sqrt 2) or d3 <= 2 d2.
inline ClassificationResult classify(const DhParams& params, ClassifyOptions opts = {}) {
  const double a1 = params.a1(), a2 = params.a2(), a3 = params.a3();
  const double d2 = params.d2(), d3 = params.d3();
  if (a1 == 0.0 && a2 == 0.0 && a3 == 0.0 && d2 == 0.0 && d3 == 0.0) {
    throw std::domain_error("classify: all parameters are zero");
  }

  ClassificationResult r;
  if (a1 == 0.0 || a2 == 0.0 || a3 == 0.0) {
    r.verdict = Verdict::Quaternary;
    r.rule = Rule::ZeroLength;
    return r;
  }
  if (d2 == 0.0 && d3 == 0.0) {
    r.rule = Rule::NoOffsets;
    const bool quaternary = a1 != a2 && !(a1 > a2 && a2 > a3);
    r.verdict = quaternary ? Verdict::Quaternary : Verdict::Binary;
    return r;
  }
  if (a2 <= a3) {
    r.verdict = Verdict::Quaternary;
    r.rule = Rule::A2LeA3;
    return r;
  }

  r.rule = Rule::ThresholdCompare;
  const auto thr = detail::threshold_unchecked(a1, a2, d2);
  // A negative radicand means the smaller root in a3^2 is negative: no
  // positive a3 lies below the surface.
  const double threshold = thr.threshold_low.value_or(0.0) + opts.threshold_bias;
  r.threshold = threshold;
  if (std::abs(a3 - threshold) <= opts.tie_tol * a2) {
    r.verdict = Verdict::Quaternary;
    r.on_surface = true;
  } else {
    r.verdict = a3 > threshold ? Verdict::Quaternary : Verdict::Binary;
  }

  if (d3 != 0.0 && r.verdict == Verdict::Binary) {
    const bool proviso = d2 >= a1 / (2.0 * std::sqrt(2.0)) || d3 <= 2.0 * d2;
    r.d3_caveat = proviso ? D3Caveat::ConditionallyExact : D3Caveat::SufficientOnly;
  }
  return r;
}

}  // namespace orthoiks
