#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "qhj/errors.hpp"

namespace qhj {

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1].
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussLegendre() {
    for (std::size_t i = 0; i < N; ++i) {
      double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (std::size_t j = 1; j <= N; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * static_cast<double>(j) - 1.0) * z * p1 - (static_cast<double>(j) - 1.0) * p2) /
               static_cast<double>(j);
        }
        dp = static_cast<double>(N) * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-15) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

inline const GaussLegendre<10>& gl10() {
  static const GaussLegendre<10> g;
  return g;
}
inline const GaussLegendre<20>& gl20() {
  static const GaussLegendre<20> g;
  return g;
}

struct PolyEval {
  std::complex<double> value;
  std::complex<double> derivative;
};

inline PolyEval eval_with_derivative(std::span<const double> c, std::complex<double> z) {
  std::complex<double> p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

struct ContourContext {
  std::span<const double> coeffs;
  double collision_distance;
  bool collided = false;
};

template <class Rule>
std::complex<double> edge_rule(ContourContext& ctx, const Rule& rule, std::complex<double> a, std::complex<double> b) {
  const auto half = 0.5 * (b - a);
  const auto mid = 0.5 * (a + b);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const auto z = mid + half * rule.x[i];
    const auto e = eval_with_derivative(ctx.coeffs, z);
    // |P/P'| estimates the distance to the nearest zero
    if (std::abs(e.value) <= ctx.collision_distance * std::abs(e.derivative)) ctx.collided = true;
    acc += rule.w[i] * e.derivative / e.value;
  }
  return acc * half;
}

inline std::complex<double> adaptive_edge(ContourContext& ctx, std::complex<double> a, std::complex<double> b,
                                          int depth) {
  const auto coarse = edge_rule(ctx, gl10(), a, b);
  const auto fine = edge_rule(ctx, gl20(), a, b);
  if (ctx.collided) return fine;
  if (std::abs(fine - coarse) < 1e-12 * std::max(1.0, std::abs(fine)) || depth > 40) return fine;
  const auto m = 0.5 * (a + b);
  return adaptive_edge(ctx, a, m, depth + 1) + adaptive_edge(ctx, m, b, depth + 1);
}

} // namespace detail

/// Outcome of the argument-principle integral (1/2 pi i) \oint P'/P dz.
struct ContourCount {
  std::complex<double> raw; ///< before rounding; imaginary part ~ 0
  int count = 0;
  double right_edge = 0.0;
  double half_height = 0.0;
};

/// Counts zeros of P (coefficients c0..cn) inside the axis-aligned rectangle
/// (left, right) x (-half_height, half_height) by integrating P'/P.
inline ContourCount argument_principle_count(std::span<const double> coeffs, double left, double right,
                                             double half_height, double collision_distance = 1e-8) {
  detail::ContourContext ctx{coeffs, collision_distance};
  const std::array<std::complex<double>, 4> corners{{{left, -half_height},
                                                     {right, -half_height},
                                                     {right, half_height},
                                                     {left, half_height}}};
  std::complex<double> total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) total += detail::adaptive_edge(ctx, corners[k], corners[(k + 1) % 4], 0);
  const auto raw = total / std::complex<double>(0.0, 2.0 * std::numbers::pi);
  // a zero on an edge yields a principal value, half-integer rather than integer
  if (ctx.collided || std::fabs(raw.real() - std::round(raw.real())) > 0.25)
    throw ContourCollisionError("a zero of the polynomial lies on the integration contour");
  return {raw, static_cast<int>(std::lround(raw.real())), right, half_height};
}

/// Number of zeros of P_n in the physical region y > 1, i.e. moving poles of
/// the quantum momentum at positive x. The rectangle spans
/// (1, 1 + (n+2)(1 + 1/s)) in Re y, widened to the Cauchy root bound when
/// that is larger; a contour collision is retried on a perturbed rectangle.
inline ContourCount count_moving_poles_detailed(std::span<const double> coeffs, double s) {
  if (coeffs.empty() || coeffs.back() == 0.0) throw DomainError("polynomial must have a nonzero leading coefficient");
  const auto n = coeffs.size() - 1;
  if (n == 0) return {0.0, 0, 1.0, 0.0};

  // a zero at y = 1 collides with the fixed pole
  const auto at_one = detail::eval_with_derivative(coeffs, 1.0);
  if (std::abs(at_one.value) <= 1e-8 * std::abs(at_one.derivative))
    throw InvariantViolation("polynomial zero at y = 1 coincides with the fixed pole");

  double cauchy = 0.0;
  for (std::size_t k = 0; k < n; ++k) cauchy = std::max(cauchy, std::fabs(coeffs[k] / coeffs.back()));
  double right = std::max(1.0 + (static_cast<double>(n) + 2.0) * (1.0 + 1.0 / s), 2.0 + cauchy);
  double height = 0.5;
  for (int attempt = 0;; ++attempt) {
    try {
      return argument_principle_count(coeffs, 1.0, right, height);
    } catch (const ContourCollisionError&) {
      if (attempt >= 5) throw;
      right *= 1.13;
      height *= 0.71;
    }
  }
}

inline int count_moving_poles(std::span<const double> coeffs, double s) {
  return count_moving_poles_detailed(coeffs, s).count;
}

} // namespace qhj
