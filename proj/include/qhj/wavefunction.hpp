#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "qhj/errors.hpp"
#include "qhj/pencil.hpp"
#include "qhj/potential.hpp"
#include "qhj/rational.hpp"

namespace qhj {

/// Value with first and second derivative, propagated by the product rule.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
  }
};

/// psi(x) = (y-1)^p1 (y+1)^p2 exp(C y) P(y), y = cosh(alpha x), written on the
/// real line as
///   psi(x) = [sqrt2 sinh(alpha x/2)]^{2 p1} [sqrt2 cosh(alpha x/2)]^{2 p2} exp(C cosh alpha x) P(cosh alpha x),
/// which fixes the odd branch by the sign of sinh(alpha x/2). Reported up to a
/// global scale chosen so that max |psi| = 1.
struct ClosedFormWavefunction {
  Rational p1;
  Rational p2;
  double c = 0.0; ///< -sqrt(v1)/alpha
  std::vector<double> coefficients;
  double alpha = 1.0;
  Parity parity = Parity::Even;
  double log_scale = 0.0; ///< log max|psi| before normalization

  /// Jet of psi(x) * exp(-C cosh(alpha x)) before normalization.
  Jet2 reduced_jet(double x) const {
    const double a = alpha;
    const double y = std::cosh(a * x);
    const double sh = std::sinh(a * x);
    Jet2 r{1.0, 0.0, 0.0};
    if (p1 == Rational(1, 2)) {
      const double u = 0.5 * a * x;
      r = r * Jet2{std::numbers::sqrt2 * std::sinh(u), std::numbers::sqrt2 * 0.5 * a * std::cosh(u),
                   std::numbers::sqrt2 * 0.25 * a * a * std::sinh(u)};
    }
    if (p2 == Rational(1, 2)) {
      const double u = 0.5 * a * x;
      r = r * Jet2{std::numbers::sqrt2 * std::cosh(u), std::numbers::sqrt2 * 0.5 * a * std::sinh(u),
                   std::numbers::sqrt2 * 0.25 * a * a * std::cosh(u)};
    }
    double p = 0.0, dp = 0.0, ddp = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
      ddp = ddp * y + 2.0 * dp;
      dp = dp * y + p;
      p = p * y + *it;
    }
    r = r * Jet2{p, dp * a * sh, ddp * a * a * sh * sh + dp * a * a * y};
    // fold in exp(C y): psi = e^u R with u = C cosh(alpha x)
    const double u1 = c * a * sh;
    const double u2 = c * a * a * y;
    return {r.v, r.d1 + u1 * r.v, r.d2 + 2.0 * u1 * r.d1 + (u2 + u1 * u1) * r.v};
  }

  /// Normalized psi and its first two derivatives.
  Jet2 jet(double x) const {
    const auto r = reduced_jet(x);
    const double f = std::exp(c * std::cosh(alpha * x) - log_scale);
    return {f * r.v, f * r.d1, f * r.d2};
  }
};

inline double evaluate_wavefunction(const ClosedFormWavefunction& wf, double x) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  const double exponent = wf.c * std::cosh(wf.alpha * x) - wf.log_scale;
  if (!std::isfinite(exponent) || exponent < -745.0) return 0.0;
  const auto r = wf.reduced_jet(x);
  if (r.v == 0.0) return 0.0;
  // combine in log space so that large polynomial values cannot overflow first
  const double magnitude = std::exp(std::log(std::fabs(r.v)) + exponent);
  return std::copysign(magnitude, r.v);
}

namespace detail {

/// log max |psi| sampled on x in [0, X] where the tail has decayed by e^-40.
inline double log_peak(const ClosedFormWavefunction& wf) {
  const double s = -wf.c;
  const double reach = std::acosh(std::max(1.0 + 40.0 / s, 2.0)) / wf.alpha;
  constexpr int samples = 4000;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double x = reach * i / samples;
    const double rv = std::fabs(wf.reduced_jet(x).v);
    if (rv == 0.0) continue;
    best = std::max(best, std::log(rv) + wf.c * std::cosh(wf.alpha * x));
  }
  return best;
}

} // namespace detail

inline ClosedFormWavefunction wavefunction(const QesLevel& level, const PotentialParams& params) {
  ClosedFormWavefunction wf;
  wf.p1 = level.set.p1();
  wf.p2 = level.set.p2();
  wf.c = -params.s();
  wf.coefficients = level.coefficients;
  wf.alpha = params.alpha();
  wf.parity = level.parity;
  wf.log_scale = detail::log_peak(wf);
  return wf;
}

/// Quantum momentum p = -i psi'/psi and its x-derivative.
struct MomentumJet {
  std::complex<double> p;
  std::complex<double> dp;
};

inline MomentumJet quantum_momentum_jet(const ClosedFormWavefunction& wf, double x) {
  const auto r = wf.reduced_jet(x);
  if (r.v == 0.0 || std::fabs(r.v) * wf.alpha < 1e-12 * std::fabs(r.d1))
    throw PoleError("psi vanishes at x: moving pole of the quantum momentum");
  using namespace std::complex_literals;
  const double w = r.d1 / r.v;
  const double dw = r.d2 / r.v - w * w;
  return {-1.0i * w, -1.0i * dw};
}

/// p(x) = -i d/dx ln psi. The energy is not needed; the argument is kept for
/// symmetry with the QHJ residual.
inline std::complex<double> quantum_momentum(const ClosedFormWavefunction& wf, double /*energy*/, double x) {
  return quantum_momentum_jet(wf, x).p;
}

/// p^2 - i p' - (E - V) at x (hbar = 2m = 1).
inline std::complex<double> qhj_residual(const ClosedFormWavefunction& wf, const PotentialParams& params,
                                         double energy, double x) {
  using namespace std::complex_literals;
  const auto m = quantum_momentum_jet(wf, x);
  return m.p * m.p - 1.0i * m.dp - (energy - real_potential(params, x));
}

/// -psi'' + V psi - E psi for the normalized closed form.
inline double schrodinger_residual(const ClosedFormWavefunction& wf, const PotentialParams& params, double energy,
                                   double x) {
  const auto j = wf.jet(x);
  return -j.d2 + (real_potential(params, x) - energy) * j.v;
}

} // namespace qhj
