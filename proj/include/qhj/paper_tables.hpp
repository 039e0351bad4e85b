#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qhj/oracle/schrodinger.hpp"
#include "qhj/pencil.hpp"
#include "qhj/qes_sets.hpp"
#include "qhj/wavefunction.hpp"

// Reproduction of the three reference QES tables for the Sinh-Gordon
// potential, each printed entry set against the value computed here.

namespace qhj {

enum class Adjudication { MatchesPaper, PaperTypoSuspected };

inline const char* adjudication_name(Adjudication a) {
  return a == Adjudication::MatchesPaper ? "matches-paper" : "paper-typo-suspected";
}

/// One row of the residue/QES-condition table. The printed M column is
/// labelled v2/(2 sqrt(v1) alpha) but its rows only hold for M = 2 lambda.
struct ResidueTableRow {
  int set_index = 0;
  Rational b1_printed;
  Rational b1_prime_printed;
  std::string n_printed;
  std::string m_condition_printed;
  std::string qes_condition_printed;
  Rational residue_sum;
  std::string m_printed_reading;    ///< M as the column header defines it
  std::string m_reconciled_reading; ///< M = 2 lambda
  std::string qes_condition_reconciled;
  double v2_for_n0 = 0.0; ///< v2 making the set admissible with n = 0
  std::string note;
};

/// One printed quantity (energy or wavefunction) of the energy tables.
struct AdjudicatedEntry {
  std::string table;
  std::string set_label;
  std::string quantity; ///< "energy" or "wavefunction"
  double lambda = 0.0;
  double v2 = 0.0;
  std::string printed;
  std::optional<double> printed_value;
  std::vector<double> computed_values;
  std::string computed;
  bool oracle_confirmed = false;
  Adjudication flag = Adjudication::MatchesPaper;
  std::string note;
};

struct PaperTables {
  double v1 = 1.0;
  double alpha = 1.0;
  std::vector<ResidueTableRow> residue_table;
  std::vector<AdjudicatedEntry> entries;
};

namespace detail {

/// A printed closed form sinh(alpha x)^k * Q(cosh alpha x) * exp(-s cosh alpha x).
struct PrintedForm {
  int sinh_power = 0;
  std::vector<double> poly;
};

/// max |-psi'' + (V - E) psi| / max |psi| over a symmetric sample.
inline double printed_form_residual(const PrintedForm& form, const PotentialParams& params, double energy) {
  const double a = params.alpha();
  const double s = params.s();
  double worst = 0.0, peak = 0.0;
  for (int i = -60; i <= 60; ++i) {
    const double x = 3.0 / a * i / 60.0 + 1e-3;
    const double y = std::cosh(a * x);
    const double sh = std::sinh(a * x);
    Jet2 psi{1.0, 0.0, 0.0};
    for (int k = 0; k < form.sinh_power; ++k) psi = psi * Jet2{sh, a * y, a * a * sh};
    double p = 0.0, dp = 0.0, ddp = 0.0;
    for (auto it = form.poly.rbegin(); it != form.poly.rend(); ++it) {
      ddp = ddp * y + 2.0 * dp;
      dp = dp * y + p;
      p = p * y + *it;
    }
    psi = psi * Jet2{p, dp * a * sh, ddp * a * a * sh * sh + dp * a * a * y};
    const double e = std::exp(-s * y);
    psi = psi * Jet2{e, -s * a * sh * e, (s * s * a * a * sh * sh - s * a * a * y) * e};
    worst = std::max(worst, std::fabs(-psi.d2 + (real_potential(params, x) - energy) * psi.v));
    peak = std::max(peak, std::fabs(psi.v));
  }
  return worst / peak;
}

inline bool close(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)); }

inline std::vector<double> energies_of(const std::vector<QesLevel>& levels, int set_index) {
  std::vector<double> out;
  for (const auto& l : levels)
    if (l.set.set_index == set_index) out.push_back(l.energy);
  return out;
}

inline const QesLevel& first_of(const std::vector<QesLevel>& levels, int set_index) {
  return *std::find_if(levels.begin(), levels.end(), [&](const QesLevel& l) { return l.set.set_index == set_index; });
}

inline bool oracle_confirms(const PotentialParams& params, const std::vector<QesLevel>& levels, int set_index) {
  std::vector<QesLevel> subset;
  for (const auto& l : levels)
    if (l.set.set_index == set_index) subset.push_back(l);
  try {
    return oracle::verify_levels(params, oracle::claims_from_levels(subset), 1e-6).overall_pass;
  } catch (const MismatchError&) {
    return false;
  }
}

inline constexpr double kPrintedFormTolerance = 1e-8;

} // namespace detail

inline PaperTables reproduce_paper_tables(double v1, double alpha) {
  if (!(v1 > 0.0) || !(alpha > 0.0)) throw DomainError("paper tables need v1 > 0 and alpha > 0");
  PaperTables out;
  out.v1 = v1;
  out.alpha = alpha;
  const double a2 = alpha * alpha;
  const double root_v1 = std::sqrt(v1);

  // residue / QES-condition table, rows in printed order
  struct Printed {
    int set;
    Rational b1, b1p;
    const char* n;
    const char* cond;
    const char* qes;
    const char* reconciled;
  };
  const Printed printed[] = {
      {1, Rational(1, 4), Rational(1, 4), "(M-1)/2", "M odd, M >= 1", "M = 2n + 1", "2 lambda = 2n + 1"},
      {2, Rational(3, 4), Rational(3, 4), "(M-3)/2", "M odd, M >= 3", "M = 2n + 3", "2 lambda = 2n + 3"},
      {3, Rational(3, 4), Rational(1, 4), "(M-2)/2", "M even, M >= 2", "M = 2n + 2", "2 lambda = 2n + 2"},
      {4, Rational(1, 4), Rational(3, 4), "(M-2)/2", "M even, M >= 2", "M = 2n + 2", "2 lambda = 2n + 2"},
  };
  for (const auto& p : printed) {
    ResidueTableRow row;
    row.set_index = p.set;
    row.b1_printed = p.b1;
    row.b1_prime_printed = p.b1p;
    row.n_printed = p.n;
    row.m_condition_printed = p.cond;
    row.qes_condition_printed = p.qes;
    row.residue_sum = p.b1 + p.b1p;
    row.m_printed_reading = "M = v2/(2 sqrt(v1) alpha)";
    row.m_reconciled_reading = "M = 2 lambda = -v2/(sqrt(v1) alpha)";
    row.qes_condition_reconciled = p.reconciled;
    row.v2_for_n0 = qes_target_v2(make_qes_set(p.set, 0), v1, alpha);
    if (p.set >= 3)
      row.note = "the energy table labels set 3 as (b1, b1') = (1/4, 3/4) and set 4 as (3/4, 1/4); "
                 "both rows share n and the QES condition";
    out.residue_table.push_back(row);
  }

  // odd M = 3 working point: sets 1 (n = 1) and 2 (n = 0)
  {
    const PotentialParams params(v1, qes_target_v2(make_qes_set(2, 0), v1, alpha), alpha);
    const auto levels = solve_classification({make_qes_set(1, 1), make_qes_set(2, 0)}, params);
    const double lambda = 1.5;

    AdjudicatedEntry e1;
    e1.table = "3.2";
    e1.set_label = "set 1";
    e1.quantity = "energy";
    e1.lambda = lambda;
    e1.v2 = params.v2();
    e1.printed = "E1 = -alpha^2/4 + alpha sqrt(v1)";
    e1.printed_value = -a2 / 4.0 + alpha * root_v1;
    e1.computed_values = detail::energies_of(levels, 1);
    e1.computed = "E = -alpha^2 (1 +- sqrt(1 + 16 s^2)) / 2";
    e1.oracle_confirmed = detail::oracle_confirms(params, levels, 1);
    const bool e1_match = std::any_of(e1.computed_values.begin(), e1.computed_values.end(),
                                      [&](double e) { return detail::close(*e1.printed_value, e); });
    e1.flag = e1_match && e1.oracle_confirmed ? Adjudication::MatchesPaper : Adjudication::PaperTypoSuspected;
    e1.note = "printed energy is not an eigenvalue of the n = 1 secular system";
    out.entries.push_back(e1);

    AdjudicatedEntry w1;
    w1.table = "3.2";
    w1.set_label = "set 1";
    w1.quantity = "wavefunction";
    w1.lambda = lambda;
    w1.v2 = params.v2();
    w1.printed = "exp(-(sqrt(v1)/alpha) cosh alpha x) (gamma cosh alpha x + beta)";
    w1.computed = "exp(-s cosh alpha x) (c1 cosh alpha x + c0)";
    bool forms_ok = true;
    for (const auto& l : levels) {
      if (l.set.set_index != 1) continue;
      w1.computed_values.push_back(l.coefficients[0] / l.coefficients[1]);
      forms_ok = forms_ok && detail::printed_form_residual({0, l.coefficients}, params, l.energy) <
                                 detail::kPrintedFormTolerance;
    }
    w1.oracle_confirmed = e1.oracle_confirmed;
    w1.flag = forms_ok && w1.oracle_confirmed ? Adjudication::MatchesPaper : Adjudication::PaperTypoSuspected;
    w1.note = "functional form checked with beta/gamma = c0/c1 from the eigenvectors (computed_values); "
              "the printed gamma expressions depend on quantities that are not defined and are not checked";
    out.entries.push_back(w1);

    AdjudicatedEntry e2;
    e2.table = "3.2";
    e2.set_label = "set 2";
    e2.quantity = "energy";
    e2.lambda = lambda;
    e2.v2 = params.v2();
    e2.printed = "E0 = -alpha^2";
    e2.printed_value = -a2;
    e2.computed_values = detail::energies_of(levels, 2);
    e2.computed = "E = -alpha^2";
    e2.oracle_confirmed = detail::oracle_confirms(params, levels, 2);
    e2.flag = detail::close(*e2.printed_value, e2.computed_values.at(0)) && e2.oracle_confirmed
                  ? Adjudication::MatchesPaper
                  : Adjudication::PaperTypoSuspected;
    out.entries.push_back(e2);

    AdjudicatedEntry w2;
    w2.table = "3.2";
    w2.set_label = "set 2";
    w2.quantity = "wavefunction";
    w2.lambda = lambda;
    w2.v2 = params.v2();
    w2.printed = "exp(-(sqrt(v1)/alpha) cosh alpha x) sinh alpha x";
    w2.computed = "exp(-s cosh alpha x) (y - 1)^(1/2) (y + 1)^(1/2) = exp(-s cosh alpha x) sinh alpha x";
    const auto& l2 = detail::first_of(levels, 2);
    const double r2 = detail::printed_form_residual({1, {1.0}}, params, l2.energy);
    w2.computed_values = {r2};
    w2.oracle_confirmed = e2.oracle_confirmed;
    w2.flag = r2 < detail::kPrintedFormTolerance && w2.oracle_confirmed ? Adjudication::MatchesPaper
                                                                         : Adjudication::PaperTypoSuspected;
    w2.note = "computed_values holds the relative Schrodinger residual of the printed form";
    out.entries.push_back(w2);
  }

  // even M = 2 working point: sets 3 and 4, both n = 0
  {
    const PotentialParams params(v1, qes_target_v2(make_qes_set(3, 0), v1, alpha), alpha);
    const auto levels = solve_classification({make_qes_set(3, 0), make_qes_set(4, 0)}, params);
    const double lambda = 1.0;
    const double printed_energy = -a2 / 4.0 - alpha * root_v1;

    for (int set : {3, 4}) {
      AdjudicatedEntry e;
      e.table = "3.3";
      e.set_label = "set " + std::to_string(set);
      e.quantity = "energy";
      e.lambda = lambda;
      e.v2 = params.v2();
      e.printed = "E0 = -alpha^2/4 - alpha sqrt(v1)";
      e.printed_value = printed_energy;
      e.computed_values = detail::energies_of(levels, set);
      e.computed = set == 3 ? "E = -alpha^2/4 - alpha sqrt(v1)" : "E = -alpha^2/4 + alpha sqrt(v1)";
      e.oracle_confirmed = detail::oracle_confirms(params, levels, set);
      e.flag = detail::close(printed_energy, e.computed_values.at(0)) && e.oracle_confirmed
                   ? Adjudication::MatchesPaper
                   : Adjudication::PaperTypoSuspected;
      if (set == 4)
        e.note = "printed energy duplicates set 3; the odd (b1 = 3/4) level has the opposite sign on alpha sqrt(v1)";
      out.entries.push_back(e);
    }

    AdjudicatedEntry w;
    w.table = "3.3";
    w.set_label = "sets 3-4";
    w.quantity = "wavefunction";
    w.lambda = lambda;
    w.v2 = params.v2();
    w.printed = "exp(-(sqrt(v1)/alpha) cosh alpha x) (cosh alpha x + 1) and (cosh alpha x - 1)";
    w.computed = "exp(-s cosh alpha x) (cosh alpha x + 1)^(1/2) and (cosh alpha x - 1)^(1/2) "
                 "[= sqrt2 cosh(alpha x/2), sqrt2 sinh(alpha x/2)]";
    const double r3 = detail::printed_form_residual({0, {1.0, 1.0}}, params, detail::first_of(levels, 3).energy);
    const double r4 = detail::printed_form_residual({0, {-1.0, 1.0}}, params, detail::first_of(levels, 4).energy);
    w.computed_values = {r3, r4};
    w.oracle_confirmed = detail::oracle_confirms(params, levels, 3) && detail::oracle_confirms(params, levels, 4);
    w.flag = r3 < detail::kPrintedFormTolerance && r4 < detail::kPrintedFormTolerance && w.oracle_confirmed
                 ? Adjudication::MatchesPaper
                 : Adjudication::PaperTypoSuspected;
    w.note = "computed_values holds the relative Schrodinger residuals of the printed forms; integrating the "
             "y/(2(y^2-1)) term gives square roots of the printed prefactors";
    out.entries.push_back(w);
  }
  return out;
}

} // namespace qhj
