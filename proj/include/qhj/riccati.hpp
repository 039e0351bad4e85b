#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "qhj/errors.hpp"
#include "qhj/laurent.hpp"
#include "qhj/potential.hpp"
#include "qhj/rational.hpp"

// Pole analysis of the Riccati form of the quantum Hamilton-Jacobi equation.
//
// With y = cosh(alpha x) the quantum momentum p = -i psi'/psi is written as
//   p = -i alpha sqrt(y^2 - 1) phi,   phi = chi - y / (2 (y^2 - 1)),
// and chi obeys chi' + chi^2 + G(y) = 0 with the fixed term
//   G(y) = (y^2 + 2) / (4 (y^2 - 1)^2) + (E - v1 y^2 - v2 y + v1) / (alpha^2 (y^2 - 1)).

namespace qhj {

/// G(y; E) = kinetic(y) + potential_part(y) + E * energy_part(y).
class RiccatiFixedTerm {
public:
  explicit RiccatiFixedTerm(const PotentialParams& params) : params_(params) {}

  const PotentialParams& params() const { return params_; }

  /// E-independent part of G.
  std::complex<double> e_independent(std::complex<double> y) const {
    const auto q = y * y - 1.0;
    const double a2 = params_.alpha() * params_.alpha();
    return (y * y + 2.0) / (4.0 * q * q) + (params_.v1() - params_.v1() * y * y - params_.v2() * y) / (a2 * q);
  }

  /// Coefficient of E in G.
  std::complex<double> e_linear(std::complex<double> y) const {
    return 1.0 / (params_.alpha() * params_.alpha() * (y * y - 1.0));
  }

  std::complex<double> operator()(std::complex<double> y, double energy) const {
    if (std::abs(y * y - 1.0) == 0.0) throw PoleError("G is singular at y = +-1");
    return e_independent(y) + energy * e_linear(y);
  }

  /// Exact Laurent expansion of the kinetic part (y^2+2)/(4(y^2-1)^2) at
  /// y = pole (+1 or -1), in powers of t = y - pole.
  static Laurent<Rational> kinetic_series(int pole, int high) {
    check_pole(pole);
    const Rational y0(pole);
    const Polynomial<Rational> num = Polynomial<Rational>{{2, 0, 1}}.shifted(y0);
    // (y + y0)^2 = (t + 2 y0)^2
    const Polynomial<Rational> den{{Rational(16), Rational(16) * y0, Rational(4)}};
    return rational_series(num, den, 2, high);
  }

  /// Laurent expansion of the full G at y = pole for a concrete energy.
  Laurent<double> series_at_pole(int pole, double energy, int high) const {
    check_pole(pole);
    const auto kin = kinetic_series(pole, high);
    std::vector<double> kc;
    for (int k = kin.low(); k < kin.high(); ++k) kc.push_back(kin[k].to_double());
    const Laurent<double> kinetic(kin.low(), kc);

    const double y0 = pole;
    const double a2 = params_.alpha() * params_.alpha();
    const auto num = Polynomial<double>{{energy + params_.v1(), -params_.v2(), -params_.v1()}}.shifted(y0);
    const Polynomial<double> den{{2.0 * y0 * a2, a2}}; // alpha^2 (t + 2 y0)
    return kinetic + rational_series(num, den, 1, high);
  }

  /// Coefficient of (y - pole)^-2 in G, from the closed form
  /// (pole^2 + 2) / (4 (2 pole)^2). Independent of E, v1, v2, alpha.
  static Rational double_pole_coefficient(int pole) {
    check_pole(pole);
    const Rational y0(pole);
    return (y0 * y0 + Rational(2)) / (Rational(4) * (Rational(2) * y0) * (Rational(2) * y0));
  }

private:
  static void check_pole(int pole) {
    if (pole != 1 && pole != -1) throw DomainError("fixed poles sit at y = +1 and y = -1 only");
  }

  PotentialParams params_;
};

inline RiccatiFixedTerm riccati_fixed_term(const PotentialParams& params) {
  params.require_positive_v1();
  return RiccatiFixedTerm(params);
}

/// Roots of b^2 - b + g = 0, ascending. `exact` is set when the discriminant
/// 1 - 4g is a perfect rational square.
struct IndicialRoots {
  double low;
  double high;
  std::optional<std::pair<Rational, Rational>> exact;
};

inline IndicialRoots indicial_residues(const Rational& coefficient) {
  const Rational disc = Rational(1) - Rational(4) * coefficient;
  if (disc < Rational(0))
    throw ComplexResidueError("indicial discriminant " + disc.str() + " is negative: residues are complex");
  if (auto root = disc.exact_sqrt()) {
    const Rational lo = (Rational(1) - *root) / Rational(2);
    const Rational hi = (Rational(1) + *root) / Rational(2);
    return {lo.to_double(), hi.to_double(), std::pair{lo, hi}};
  }
  const double r = std::sqrt(disc.to_double());
  return {(1.0 - r) / 2.0, (1.0 + r) / 2.0, std::nullopt};
}

/// Laurent data of chi at a fixed pole: chi = b/(y - pole) + a0 + ...
struct FixedPoleAnalysis {
  int location = 1;
  std::array<Rational, 2> residues;
  Rational double_pole_coefficient;
  /// a0 matched at order (y - pole)^-1 for each residue; depends on the energy.
  std::array<double, 2> a0{};
  double energy = 0.0;
};

/// Matches chi = b/t + a0 against chi' + chi^2 + G = 0 at t = y - pole.
/// The double-pole coefficient is taken from the series expansion of G and
/// must agree with the closed form; each residue is then re-substituted into
/// the truncated series and checked to vanish exactly.
inline FixedPoleAnalysis analyze_fixed_pole(const RiccatiFixedTerm& term, int pole, double energy) {
  const auto kin = RiccatiFixedTerm::kinetic_series(pole, 0);
  const Rational g2 = kin[-2];
  if (g2 != RiccatiFixedTerm::double_pole_coefficient(pole))
    throw InvariantViolation("series and closed-form double-pole coefficients disagree");

  const auto roots = indicial_residues(g2);
  if (!roots.exact) throw InvariantViolation("fixed-pole residues are not rational");

  FixedPoleAnalysis out;
  out.location = pole;
  out.residues = {roots.exact->first, roots.exact->second};
  out.double_pole_coefficient = g2;
  out.energy = energy;

  const auto g = term.series_at_pole(pole, energy, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    const Rational b = out.residues[i];
    const Laurent<Rational> chi(-1, {b});
    const auto lhs = chi.derivative() + chi * chi + kin;
    if (lhs[-2] != Rational(0)) throw InvariantViolation("residue does not cancel the double pole");
    out.a0[i] = -g[-1] / (2.0 * b.to_double());
  }
  return out;
}

/// Behaviour of chi at y -> infinity: chi = C + lambda / y + ...
struct InfinityAnalysis {
  std::array<double, 2> c_candidates{}; ///< +-sqrt(v1)/alpha
  double c_physical = 0.0;              ///< -sqrt(v1)/alpha, normalizable branch
  double lambda = 0.0;                  ///< -v2 / (2 sqrt(v1) alpha)
  double m_table = 0.0;                 ///< 2 lambda
};

/// Complex matching at infinity for arbitrary coefficients of sinh^2 and cosh.
/// Expands G in w = 1/y and matches orders w^0 and w^1 of chi' + chi^2 + G with
/// chi = C + lambda w. Returns {(C, lambda)} for the branch C = -sqrt(-g0)
/// first, then C = +sqrt(-g0).
inline std::array<std::pair<std::complex<double>, std::complex<double>>, 2>
match_at_infinity(const VariantCoefficients& coeffs) {
  using C = std::complex<double>;
  const double a2 = coeffs.alpha * coeffs.alpha;
  // potential part in w: ((E + A) w^2 - B w - A) / (alpha^2 (1 - w^2)); only w^0 and w^1 are needed.
  const Polynomial<C> num{{-coeffs.sinh2, -coeffs.cosh}};
  const Polynomial<C> den{{C(a2), C(0.0), C(-a2)}};
  const auto g = rational_series(num, den, 0, 2); // kinetic part starts at w^2
  const C g0 = g[0];
  const C g1 = g[1];
  if (g0 == C(0.0)) throw DegeneratePotentialError("no sinh^2 term: the expansion at infinity degenerates");
  const C root = std::sqrt(-g0);
  std::array<std::pair<C, C>, 2> out;
  for (int i = 0; i < 2; ++i) {
    const C c = i == 0 ? -root : root;
    out[static_cast<std::size_t>(i)] = {c, -g1 / (2.0 * c)};
  }
  return out;
}

inline InfinityAnalysis infinity_analysis(const PotentialParams& params) {
  params.require_positive_v1();
  const auto branches = match_at_infinity(variant_coefficients(params, Variant::RealSinhGordon));
  InfinityAnalysis out;
  out.c_physical = branches[0].first.real();
  out.c_candidates = {branches[1].first.real(), branches[0].first.real()};
  out.lambda = branches[0].second.real();
  out.m_table = 2.0 * out.lambda;
  return out;
}

} // namespace qhj
