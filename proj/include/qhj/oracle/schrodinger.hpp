#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "qhj/errors.hpp"
#include "qhj/oracle/tridiagonal.hpp"
#include "qhj/pencil.hpp"
#include "qhj/potential.hpp"
#include "qhj/qes_sets.hpp"

// Independent check of the analytic levels: second-order central differences
// for -psi'' + V psi = E psi on [-L, L] with Dirichlet walls, solved as a
// symmetric tridiagonal eigenproblem, with Richardson extrapolation over h, h/2.

namespace qhj::oracle {

/// Interior points x_i = -L + (i+1) h, i = 0..N-1, with h = 2L/(N+1).
struct GridSpec {
  double half_width = 0.0;
  std::size_t points = 0;

  double step() const { return 2.0 * half_width / static_cast<double>(points + 1); }
  double x(std::size_t i) const { return -half_width + static_cast<double>(i + 1) * step(); }

  /// Same interval, half the step.
  GridSpec refined() const { return {half_width, 2 * points + 1}; }
};

inline constexpr std::size_t kMinGridPoints = 200;
inline constexpr std::size_t kMaxGridPoints = 200000;
inline constexpr double kTailExponent = 40.0;

/// Throws unless N >= 200, L > 0 and s cosh(alpha L) >= 40.
inline void validate_grid(const GridSpec& g, const PotentialParams& params) {
  if (!(g.half_width > 0.0)) throw DomainError("grid half width must be positive");
  if (g.points < kMinGridPoints) throw DomainError("grid needs at least 200 points");
  if (params.s() * std::cosh(params.alpha() * g.half_width) < kTailExponent * (1.0 - 1e-12))
    throw DomainError("grid half width violates the tail criterion s cosh(alpha L) >= 40");
}

inline GridSpec default_grid(const PotentialParams& params, int /*levels_needed*/ = 1) {
  const double s = params.s();
  const double a = params.alpha();
  const double half_width = std::acosh(std::max(kTailExponent / s, 10.0)) / a;
  const double max_step = std::min(0.002 / a, half_width / 1000.0);
  auto points = static_cast<std::size_t>(std::ceil(2.0 * half_width / max_step)) - 1;
  points = std::clamp(points, kMinGridPoints, kMaxGridPoints);
  return {half_width, points};
}

inline SymmetricTridiagonal<double> discretize(const PotentialParams& params, const GridSpec& grid) {
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> d(grid.points), e(grid.points - 1, -inv_h2);
  for (std::size_t i = 0; i < grid.points; ++i) d[i] = 2.0 * inv_h2 + real_potential(params, grid.x(i));
  return {std::move(d), std::move(e)};
}

/// Strict sign changes, ignoring entries below 1e-12 of the peak magnitude.
inline int node_count(std::span<const double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  if (!(peak > 0.0)) throw DomainError("node_count: vector is numerically zero");
  const double floor = 1e-12 * peak;
  int changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::fabs(x) < floor) continue;
    const int sgn = x > 0 ? 1 : -1;
    if (last != 0 && sgn != last) ++changes;
    last = sgn;
  }
  return changes;
}

/// +1 for even, -1 for odd, 0 if the vector is neither to within `tol` of its peak.
inline int grid_parity(std::span<const double> v, double tol = 1e-6) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  for (int sign : {1, -1}) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::fabs(v[i] - sign * v[v.size() - 1 - i]));
    if (worst < tol * peak) return sign;
  }
  return 0;
}

struct NumericSpectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  GridSpec grid;
};

inline NumericSpectrum lowest_eigenvalues(const PotentialParams& params, const GridSpec& grid, int k,
                                          bool with_vectors = true) {
  validate_grid(grid, params);
  if (k < 1 || static_cast<std::size_t>(k) > grid.points / 10)
    throw DomainError("requested eigenvalue count must be in [1, N/10]");
  const auto t = discretize(params, grid);
  NumericSpectrum out;
  out.grid = grid;
  out.eigenvalues = t.lowest(static_cast<std::size_t>(k));
  for (std::size_t i = 1; i < out.eigenvalues.size(); ++i)
    if (!(out.eigenvalues[i] > out.eigenvalues[i - 1])) throw NumericError("oracle eigenvalues not strictly increasing");
  if (with_vectors) {
    for (int i = 0; i < k; ++i) {
      out.eigenvectors.push_back(t.eigenvector(out.eigenvalues[static_cast<std::size_t>(i)]));
      if (node_count(out.eigenvectors.back()) != i)
        throw InvariantViolation("Sturm oscillation violated for oracle state " + std::to_string(i));
    }
  }
  return out;
}

/// A level whose energy, node count and parity are to be checked.
struct ClaimedLevel {
  std::string label;
  double energy = 0.0;
  int node_count = 0;
  Parity parity = Parity::Even;
};

struct VerificationRow {
  std::string label;
  double energy_analytic = 0.0;
  double energy_oracle = 0.0; ///< Richardson-extrapolated
  double abs_gap = 0.0;
  double gap_coarse = 0.0; ///< |E_h - E_analytic|
  double gap_fine = 0.0;   ///< |E_{h/2} - E_analytic|
  double error_ratio = 0.0;
  int oracle_index = -1;
  int node_count_analytic = 0;
  int node_count_oracle = 0;
  Parity parity_analytic = Parity::Even;
  int parity_oracle = 0; ///< +1, -1, or 0 when undetermined
  bool parity_match = false;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  /// Oracle eigenvalues (Richardson) that no claimed level matched.
  std::vector<double> unmatched_oracle;
  double convergence_order_estimate = 0.0;
  double tolerance = 0.0;
  GridSpec grid;
  bool overall_pass = false;
};

/// Matches every claimed level to the nearest Richardson-extrapolated oracle
/// eigenvalue. A claim farther than 10 * tolerance from all of them, or two
/// claims landing on the same eigenvalue, is a hard mismatch.
inline VerificationReport verify_levels(const PotentialParams& params, const std::vector<ClaimedLevel>& claims,
                                        double tolerance, std::optional<GridSpec> grid_override = std::nullopt) {
  if (claims.empty()) throw DomainError("nothing to verify");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  const GridSpec coarse = grid_override.value_or(default_grid(params));
  const GridSpec fine = coarse.refined();
  validate_grid(coarse, params);

  double top = claims.front().energy;
  for (const auto& c : claims) top = std::max(top, c.energy);
  int k = static_cast<int>(claims.size()) + 3;
  k = std::min<int>(k, static_cast<int>(coarse.points / 10));

  auto coarse_job = std::async(std::launch::async, [&] { return discretize(params, coarse); });
  const auto t_fine = discretize(params, fine);
  const auto t_coarse = coarse_job.get();
  // make sure the oracle window reaches above the highest claim
  while (static_cast<std::size_t>(k) < coarse.points / 10 && t_fine.eigenvalue(static_cast<std::size_t>(k - 1)) < top + 1.0)
    ++k;

  auto ec_job = std::async(std::launch::async, [&] { return t_coarse.lowest(static_cast<std::size_t>(k)); });
  const auto e_fine = t_fine.lowest(static_cast<std::size_t>(k));
  const auto e_coarse = ec_job.get();
  std::vector<double> extrapolated(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < extrapolated.size(); ++i) extrapolated[i] = (4.0 * e_fine[i] - e_coarse[i]) / 3.0;

  VerificationReport report;
  report.tolerance = tolerance;
  report.grid = coarse;
  std::vector<bool> taken(extrapolated.size(), false);
  double order_sum = 0.0;
  int order_count = 0;
  bool all_pass = true;
  for (const auto& claim : claims) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < extrapolated.size(); ++i)
      if (std::fabs(extrapolated[i] - claim.energy) < std::fabs(extrapolated[best] - claim.energy)) best = i;
    const double gap = std::fabs(extrapolated[best] - claim.energy);
    if (gap > 10.0 * tolerance)
      throw MismatchError("level '" + claim.label + "' at E = " + std::to_string(claim.energy) +
                          " has no oracle eigenvalue within 10 * tolerance (nearest gap " + std::to_string(gap) + ")");
    if (taken[best])
      throw MismatchError("level '" + claim.label + "' maps to an oracle eigenvalue already matched by another level");
    taken[best] = true;

    VerificationRow row;
    row.label = claim.label;
    row.energy_analytic = claim.energy;
    row.energy_oracle = extrapolated[best];
    row.abs_gap = gap;
    row.gap_coarse = std::fabs(e_coarse[best] - claim.energy);
    row.gap_fine = std::fabs(e_fine[best] - claim.energy);
    row.error_ratio = row.gap_coarse / row.gap_fine;
    row.oracle_index = static_cast<int>(best);
    row.node_count_analytic = claim.node_count;
    const auto vec = t_fine.eigenvector(e_fine[best]);
    row.node_count_oracle = node_count(vec);
    row.parity_analytic = claim.parity;
    row.parity_oracle = grid_parity(vec);
    row.parity_match = row.parity_oracle == (claim.parity == Parity::Even ? 1 : -1);
    row.pass = gap <= tolerance && row.parity_match && row.node_count_oracle == row.node_count_analytic;
    all_pass = all_pass && row.pass;
    if (std::isfinite(row.error_ratio) && row.error_ratio > 0.0) {
      order_sum += std::log2(row.error_ratio);
      ++order_count;
    }
    report.rows.push_back(row);
  }
  for (std::size_t i = 0; i < extrapolated.size(); ++i)
    if (!taken[i]) report.unmatched_oracle.push_back(extrapolated[i]);
  report.convergence_order_estimate = order_count ? order_sum / order_count : 0.0;
  report.overall_pass = all_pass;
  return report;
}

inline std::string level_label(const QesLevel& level, int index_in_set) {
  return "set" + std::to_string(level.set.set_index) + "/n" + std::to_string(level.set.n) + "/k" +
         std::to_string(index_in_set);
}

inline std::vector<ClaimedLevel> claims_from_levels(const std::vector<QesLevel>& levels) {
  std::vector<ClaimedLevel> out;
  std::vector<int> per_set(5, 0);
  for (const auto& l : levels) {
    // levels arrive sorted by energy, so k counts upward within each set
    out.push_back({level_label(l, per_set[static_cast<std::size_t>(l.set.set_index)]++), l.energy, l.node_count,
                   l.parity});
  }
  return out;
}

inline VerificationReport verify_qes(const PotentialParams& params, const QesClassification& classification,
                                     double tolerance, std::optional<GridSpec> grid_override = std::nullopt) {
  if (classification.sets.empty()) throw InadmissibleParametersError("no admissible QES sets to verify");
  const auto levels = solve_classification(classification.sets, params);
  return verify_levels(params, claims_from_levels(levels), tolerance, grid_override);
}

} // namespace qhj::oracle
