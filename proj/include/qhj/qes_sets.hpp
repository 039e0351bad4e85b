#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qhj/errors.hpp"
#include "qhj/rational.hpp"

namespace qhj {

/// One admissible residue pair (b1 at y = +1, b1' at y = -1) with the degree n
/// of the polynomial factor, fixed by b1 + b1' + n = lambda.
struct QesSet {
  int set_index = 1;
  Rational b1;
  Rational b1_prime;
  int n = 0;

  /// Exponent of (y - 1) in the closed-form wavefunction.
  Rational p1() const { return b1 - Rational(1, 4); }
  /// Exponent of (y + 1).
  Rational p2() const { return b1_prime - Rational(1, 4); }
  Rational residue_sum() const { return b1 + b1_prime; }
  double lambda() const { return residue_sum().to_double() + n; }
  bool odd_parity() const { return b1 == Rational(3, 4); }

  friend bool operator==(const QesSet&, const QesSet&) = default;
};

/// (b1, b1') for set indices 1..4. Sets 3 and 4 follow the labelling of the
/// n = 0, M = 2 energy table: set 3 is even (b1 = 1/4), set 4 is odd.
inline const std::array<std::array<Rational, 2>, 4>& residue_pairs() {
  static const std::array<std::array<Rational, 2>, 4> pairs{{
      {Rational(1, 4), Rational(1, 4)},
      {Rational(3, 4), Rational(3, 4)},
      {Rational(1, 4), Rational(3, 4)},
      {Rational(3, 4), Rational(1, 4)},
  }};
  return pairs;
}

inline QesSet make_qes_set(int set_index, int n) {
  if (set_index < 1 || set_index > 4) throw DomainError("set index must be 1..4, got " + std::to_string(set_index));
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  const auto& pr = residue_pairs()[static_cast<std::size_t>(set_index - 1)];
  return {set_index, pr[0], pr[1], n};
}

struct QesClassification {
  double lambda = 0.0;
  std::vector<QesSet> sets;
  int total_levels = 0;
};

inline constexpr double kDefaultIntegralityTolerance = 1e-9;

inline QesClassification enumerate_qes_sets(double lambda, double tolerance = kDefaultIntegralityTolerance) {
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  if (!(tolerance >= 0.0)) throw DomainError("tolerance must be non-negative");
  QesClassification out;
  out.lambda = lambda;
  for (int idx = 1; idx <= 4; ++idx) {
    const auto& pr = residue_pairs()[static_cast<std::size_t>(idx - 1)];
    const double n = lambda - (pr[0] + pr[1]).to_double();
    const double rounded = std::round(n);
    if (rounded < 0.0 || std::fabs(n - rounded) > tolerance) continue;
    out.sets.push_back(make_qes_set(idx, static_cast<int>(rounded)));
    out.total_levels += static_cast<int>(rounded) + 1;
  }
  return out;
}

/// The unique v2 (negative) for which `set` is admissible at the given v1, alpha.
inline double qes_target_v2(const QesSet& set, double v1, double alpha) {
  if (!(v1 > 0.0) || !(alpha > 0.0)) throw DomainError("qes_target_v2 needs v1 > 0 and alpha > 0");
  return -2.0 * std::sqrt(v1) * alpha * set.lambda();
}

} // namespace qhj
