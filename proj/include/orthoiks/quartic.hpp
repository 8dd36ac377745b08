#pragma once

// Real roots of the binomially weighted quartic
//   P(t) = c0 t^4 + 4 c1 t^3 + 6 c2 t^2 + 4 c3 t + c4
// with multiplicity structure, plus the algebraic invariants that detect
// triple and quadruple roots.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace orthoiks {

struct QuarticCoeffs {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

  /// Plain monomial coefficients, highest degree first.
  std::array<double, 5> monomial() const {
    return {c0, 4.0 * c1, 6.0 * c2, 4.0 * c3, c4};
  }

  /// max(1, |c0|, ..., |c4|); the reference magnitude for relative tolerances.
  double scale() const {
    return std::max({1.0, std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
  }

  double max_abs() const {
    return std::max({std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
  }

  double operator()(double t) const {
    const auto m = monomial();
    return (((m[0] * t + m[1]) * t + m[2]) * t + m[3]) * t + m[4];
  }

  friend bool operator==(const QuarticCoeffs&, const QuarticCoeffs&) = default;
};

/// Re-expresses P in the half-angle variable of a rotated angle: if
/// t = tan(theta/2), the result is the quartic in t' = tan((theta - alpha)/2).
/// The invariants e1 and e2 are unchanged by this substitution.
inline QuarticCoeffs rotate_half_angle(const QuarticCoeffs& c, double alpha) {
  // Binary form F(X, Y) with X = c X' + s Y', Y = -s X' + c Y'.
  const double ch = std::cos(alpha / 2), sh = std::sin(alpha / 2);
  const std::array<double, 5> w = {c.c0, c.c1, c.c2, c.c3, c.c4};
  constexpr std::array<double, 5> binom = {1, 4, 6, 4, 1};
  std::array<double, 5> out{};  // coefficients of X'^(4-i) Y'^i
  for (int k = 0; k < 5; ++k) {
    // X^(4-k) Y^k, expanded as polynomials in (X', Y').
    std::array<double, 5> term{};
    term[0] = binom[k] * w[k];
    int deg = 0;
    auto mul = [&](double a, double b) {  // multiply by (a X' + b Y')
      std::array<double, 5> next{};
      for (int i = 0; i <= deg; ++i) {
        next[i] += a * term[i];
        next[i + 1] += b * term[i];
      }
      term = next;
      ++deg;
    };
    for (int i = 0; i < 4 - k; ++i) mul(ch, sh);
    for (int i = 0; i < k; ++i) mul(-sh, ch);
    for (int i = 0; i < 5; ++i) out[i] += term[i];
  }
  return {out[0], out[1] / 4, out[2] / 6, out[3] / 4, out[4]};
}

/// Left-hand sides of the quadruple-root conditions. e1 and e2 are the
/// classical I and J invariants of the quartic form; e1 = e2 = 0 at a triple
/// root, and all three vanish at a quadruple root.
struct MultiplicityInvariants {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
};

inline MultiplicityInvariants multiplicity_invariants(const QuarticCoeffs& c) {
  return {c.c0 * c.c4 - 4 * c.c1 * c.c3 + 3 * c.c2 * c.c2,
          c.c0 * c.c2 * c.c4 + 2 * c.c1 * c.c2 * c.c3 - c.c0 * c.c3 * c.c3 -
              c.c1 * c.c1 * c.c4 - c.c2 * c.c2 * c.c2,
          c.c0 * c.c2 - c.c1 * c.c1};
}

/// Invariants divided by the matching power of max|c_i| (degree 2, 3, 2).
/// Scale free, so comparable across manipulators and workspace points.
inline MultiplicityInvariants normalized_invariants(const QuarticCoeffs& c) {
  const double s = c.max_abs();
  if (s == 0.0) return {};
  const auto e = multiplicity_invariants(c);
  return {e.e1 / (s * s), e.e2 / (s * s * s), e.e3 / (s * s)};
}

struct RootCluster {
  double value = 0.0;
  int multiplicity = 1;
};

struct QuarticRoots {
  std::vector<RootCluster> clusters;  // finite real roots, ascending
  int infinite_multiplicity = 0;      // t = infinity, i.e. theta3 = pi

  /// Number of distinct real solutions, the root at infinity included.
  int distinct() const {
    return static_cast<int>(clusters.size()) + (infinite_multiplicity > 0 ? 1 : 0);
  }
  int max_multiplicity() const {
    int m = infinite_multiplicity;
    for (const auto& c : clusters) m = std::max(m, c.multiplicity);
    return m;
  }
};

class IdenticallyZeroError : public std::domain_error {
 public:
  IdenticallyZeroError()
      : std::domain_error("quartic is identically zero (positional degeneracy)") {}
};

struct QuarticSolveOptions {
  double cluster_tol = 1e-6;  // chordal gap below which roots merge
  double lead_tol = 1e-12;    // |c0| below lead_tol * scale drops the degree
};

namespace detail {

template <int N>
std::vector<std::complex<double>> companion_roots(const double* p) {
  // p[0] t^N + ... + p[N], p[0] != 0
  Eigen::Matrix<double, N, N> m = Eigen::Matrix<double, N, N>::Zero();
  for (int i = 0; i < N; ++i) m(0, i) = -p[i + 1] / p[0];
  for (int i = 1; i < N; ++i) m(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix<double, N, N>> solver(m, false);
  std::vector<std::complex<double>> roots;
  if (solver.info() != Eigen::Success) return roots;
  for (int i = 0; i < N; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

inline std::vector<std::complex<double>> polynomial_roots(const double* p, int degree) {
  switch (degree) {
    case 1: return {std::complex<double>(-p[1] / p[0], 0.0)};
    case 2: return companion_roots<2>(p);
    case 3: return companion_roots<3>(p);
    case 4: return companion_roots<4>(p);
    default: return {};
  }
}

// Value of the k-th derivative of the monomial polynomial p (degree n) at t.
inline double derivative_at(const double* p, int degree, int k, double t) {
  double acc = 0.0;
  for (int i = 0; i <= degree - k; ++i) {
    const int power = degree - i;
    double factor = 1.0;
    for (int j = 0; j < k; ++j) factor *= power - j;
    acc = acc * t + factor * p[i];
  }
  return acc;
}

// Distance on the Riemann sphere; for real t it is |sin| of half the angle
// difference, so clusters at large t are judged like any other.
inline double chordal(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

// Merge radius for a cluster of m roots. A perturbed m-fold root spreads
// roughly like eps^(1/m), which dominates cluster_tol for m >= 3.
inline double merge_radius(int m, double cluster_tol, double magnitude) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double spread = 4.0 * std::pow(eps, 1.0 / m);
  return std::max(cluster_tol, spread) * (1.0 + magnitude);
}

}  // namespace detail

/// All real roots of P with nearby roots merged into clusters. Roots are taken
/// from companion-matrix eigenvalues; isolated real roots get a Newton polish,
/// clusters are centred by their mean and polished on the (m-1)-th derivative.
inline QuarticRoots solve_quartic_real(const QuarticCoeffs& c, QuarticSolveOptions opts = {}) {
  const auto mono = c.monomial();
  if (c.max_abs() <= 1e-14) throw IdenticallyZeroError();

  QuarticRoots out;
  const double scale = c.scale();
  int lead = 0;
  while (lead < 4 && std::abs(mono[lead]) < opts.lead_tol * scale) ++lead;
  out.infinite_multiplicity = lead;
  const int degree = 4 - lead;
  if (degree == 0) return out;

  const double* p = mono.data() + lead;
  const auto roots = detail::polynomial_roots(p, degree);

  // Group roots whose chordal diameter fits the merge radius of the group size,
  // largest groups first, tightest group first within a size.
  const int n = static_cast<int>(roots.size());
  std::vector<int> owner(n, -1);
  for (int m = n; m >= 2; --m) {
    while (true) {
      int best = 0;
      double best_diam = std::numeric_limits<double>::infinity();
      for (int mask = 1; mask < (1 << n); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != m) continue;
        double diam = 0.0;
        bool free = true;
        for (int i = 0; i < n && free; ++i) {
          if (!(mask >> i & 1)) continue;
          free = owner[i] < 0;
          for (int j = i + 1; j < n; ++j) {
            if (mask >> j & 1) diam = std::max(diam, detail::chordal(roots[i], roots[j]));
          }
        }
        if (free && diam <= detail::merge_radius(m, opts.cluster_tol, 0.0) && diam < best_diam) {
          best = mask;
          best_diam = diam;
        }
      }
      if (!best) break;
      const int head = std::countr_zero(static_cast<unsigned>(best));
      for (int i = 0; i < n; ++i) {
        if (best >> i & 1) owner[i] = head;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (owner[i] < 0) owner[i] = i;
  }
  auto find = [&](int i) { return owner[i]; };

  for (int i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    std::complex<double> sum = 0.0;
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (find(j) == i) {
        sum += roots[j];
        ++m;
      }
    }
    const std::complex<double> centre = sum / static_cast<double>(m);
    const double imag_tol = (m == 1 ? 1e-10 : detail::merge_radius(m, opts.cluster_tol, 0.0)) *
                            (1.0 + std::abs(centre.real()));
    if (std::abs(centre.imag()) > imag_tol) continue;

    double t = centre.real();
    // Polish on the (m-1)-th derivative, which has a simple root at a true
    // m-fold root. Keep a step only when it reduces the residual.
    const int k = m - 1;
    for (int it = 0; it < 3; ++it) {
      const double f = detail::derivative_at(p, degree, k, t);
      const double df = detail::derivative_at(p, degree, k + 1, t);
      if (df == 0.0 || !std::isfinite(f / df)) break;
      const double next = t - f / df;
      if (std::abs(detail::derivative_at(p, degree, k, next)) >= std::abs(f)) break;
      t = next;
    }
    out.clusters.push_back({t, m});
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.value < b.value; });
  return out;
}

}  // namespace orthoiks
