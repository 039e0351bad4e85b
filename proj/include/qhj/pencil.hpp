#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "qhj/errors.hpp"
#include "qhj/moving_poles.hpp"
#include "qhj/potential.hpp"
#include "qhj/qes_sets.hpp"

// Secular problem for the polynomial factor P_n(y) = sum_k c_k y^k of
//   psi = (y - 1)^p1 (y + 1)^p2 exp(-s y) P_n(y),  y = cosh(alpha x),  s = sqrt(v1)/alpha.
// Substituting into -psi'' + V psi = E psi with v2 = -2 sqrt(v1) alpha (p1 + p2 + 1/2 + n)
// and matching powers of y gives H c = h c with E = -alpha^2 h, where row k of H
// couples c_{k-1}, c_k, c_{k+1}, c_{k+2}.

namespace qhj {

enum class Parity { Even, Odd };

inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct SpectralPencil {
  QesSet set;
  double s = 0.0;
  Eigen::MatrixXd matrix; ///< dimensionless; E = -alpha^2 * eig(matrix)

  int size() const { return static_cast<int>(matrix.rows()); }
};

namespace pencil_entries {

inline double diagonal(int k, double p1, double p2, double s) {
  const double ps = p1 + p2;
  return k * (k - 1.0) + (2.0 * ps + 1.0) * k + ps * ps - 2.0 * s * (p1 - p2);
}
inline double super1(int k, double p1, double p2, double s) { return 2.0 * (k + 1.0) * (p1 - p2 + s); }
inline double super2(int k) { return -(k + 2.0) * (k + 1.0); }
inline double sub1(int k, int n, double s) { return 2.0 * s * (n - k + 1.0); }

} // namespace pencil_entries

/// Relative tolerance on the QES condition v2 = -2 sqrt(v1) alpha (b1 + b1' + n).
inline constexpr double kQesConditionTolerance = 1e-9;

inline SpectralPencil build_pencil(const QesSet& set, const PotentialParams& params) {
  const double s = params.s();
  const double target = qes_target_v2(set, params.v1(), params.alpha());
  if (std::fabs(params.v2() - target) > kQesConditionTolerance * std::max(1.0, std::fabs(target))) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "v2 = " << params.v2() << " violates the QES condition of set " << set.set_index << " (n = " << set.n
        << "), which requires v2 = " << target;
    throw InadmissibleParametersError(msg.str());
  }
  const int n = set.n;
  const double p1 = set.p1().to_double();
  const double p2 = set.p2().to_double();

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    h(k, k) = pencil_entries::diagonal(k, p1, p2, s);
    if (k >= 1) h(k, k - 1) = pencil_entries::sub1(k, n, s);
    if (k + 1 <= n) h(k, k + 1) = pencil_entries::super1(k, p1, p2, s);
    if (k + 2 <= n) h(k, k + 2) = pencil_entries::super2(k);
  }
  return {set, s, std::move(h)};
}

struct QesLevel {
  double energy = 0.0;
  std::vector<double> coefficients; ///< c_0..c_n, c_n = 1
  QesSet set;
  int node_count = 0;
  Parity parity = Parity::Even;
  int moving_poles = 0; ///< zeros of P_n in y > 1
};

namespace detail {

/// Diagonal similarity balancing (Parlett-Reinsch, radix 2). Returns the
/// scaling d with balanced = D^-1 A D.
inline Eigen::VectorXd balance(Eigen::MatrixXd& a) {
  const auto n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::fabs(a(j, i));
        r += std::fabs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double total = c + r;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 4.0;
        r /= 4.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 4.0;
        r *= 4.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * total) {
        converged = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

} // namespace detail

inline constexpr double kImaginaryTolerance = 1e-10;

/// Energies and polynomial coefficients of all levels of one QES set, ascending in energy.
inline std::vector<QesLevel> solve_levels(const SpectralPencil& pencil, const PotentialParams& params) {
  const double a2 = params.alpha() * params.alpha();
  const int size = pencil.size();
  const QesSet& set = pencil.set;
  const Parity parity = set.odd_parity() ? Parity::Odd : Parity::Even;

  std::vector<QesLevel> levels;
  if (size == 1) {
    const double p1 = set.p1().to_double();
    const double p2 = set.p2().to_double();
    const double h = (p1 + p2) * (p1 + p2) - 2.0 * pencil.s * (p1 - p2);
    levels.push_back({-a2 * h, {1.0}, set, 0, parity, 0});
  } else {
    Eigen::MatrixXd balanced = pencil.matrix;
    const Eigen::VectorXd scale = detail::balance(balanced);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(balanced, true);
    if (solver.info() != Eigen::Success) throw NumericError("pencil eigensolver did not converge");
    const auto values = solver.eigenvalues();
    const auto vectors = solver.eigenvectors();
    for (int i = 0; i < size; ++i) {
      const auto lam = values(i);
      if (std::fabs(lam.imag()) > kImaginaryTolerance * std::max(1.0, std::abs(lam)))
        throw InvariantViolation("pencil eigenvalue has imaginary part " + std::to_string(lam.imag()));
      Eigen::VectorXcd v = scale.cast<std::complex<double>>().cwiseProduct(vectors.col(i));
      const auto lead = v(size - 1);
      if (std::abs(lead) < 1e-14 * v.norm()) throw NumericError("eigenvector has vanishing leading coefficient");
      v /= lead;
      QesLevel level;
      level.energy = -a2 * lam.real();
      level.set = set;
      level.parity = parity;
      for (int k = 0; k < size; ++k) level.coefficients.push_back(v(k).real());
      levels.push_back(std::move(level));
    }
  }

  for (auto& level : levels) {
    level.moving_poles = count_moving_poles(level.coefficients, pencil.s);
    level.node_count = 2 * level.moving_poles + (parity == Parity::Odd ? 1 : 0);
  }
  std::sort(levels.begin(), levels.end(), [](const QesLevel& a, const QesLevel& b) { return a.energy < b.energy; });
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i].energy - levels[i - 1].energy <= 1e-12 * std::max(1.0, std::fabs(levels[i].energy)))
      throw InvariantViolation("degenerate pencil eigenvalues");
  return levels;
}

/// All QES levels of every set in a classification, ascending in energy.
inline std::vector<QesLevel> solve_classification(const std::vector<QesSet>& sets, const PotentialParams& params) {
  std::vector<QesLevel> all;
  for (const auto& set : sets) {
    auto lv = solve_levels(build_pencil(set, params), params);
    all.insert(all.end(), lv.begin(), lv.end());
  }
  std::sort(all.begin(), all.end(), [](const QesLevel& a, const QesLevel& b) { return a.energy < b.energy; });
  return all;
}

} // namespace qhj
