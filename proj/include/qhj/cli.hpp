#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qhj/errors.hpp"
#include "qhj/oracle/schrodinger.hpp"
#include "qhj/paper_tables.hpp"
#include "qhj/pencil.hpp"
#include "qhj/potential.hpp"
#include "qhj/qes_sets.hpp"
#include "qhj/riccati.hpp"
#include "qhj/symmetry.hpp"
#include "qhj/wavefunction.hpp"

// Command-line front end: classify, solve, verify, sample, table.
// Exit codes: 0 success/pass, 1 verification mismatch, 2 usage or parameter error.

namespace qhj::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Decimal string with 12 significant digits, locale independent.
inline std::string num(double v) {
  if (v == 0.0) v = 0.0; // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return {buf, r.ptr};
}

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

struct CliConfig {
  std::optional<double> v1, v2, alpha, lambda;
  std::string variant = "real";
  std::optional<int> set_index, n;
  std::optional<double> grid_half_width;
  std::optional<std::size_t> grid_points;
  double tolerance = 1e-6;
  std::string output_format;
  std::optional<std::string> output_path;
  std::optional<double> x_min, x_max;
  int sample_points = 1001;
  bool assert_table_32 = false;
  bool assert_table_33 = false;
};

namespace detail {

/// Fills fields not given on the command line from a JSON config object
/// whose keys match the long flag names.
inline void merge_config(CliConfig& c, const json& j, const std::vector<std::string>& given) {
  auto was_given = [&](const std::string& k) { return std::find(given.begin(), given.end(), k) != given.end(); };
  auto take_double = [&](const char* key, auto& field) {
    if (!was_given(key) && j.contains(key)) field = j.at(key).get<double>();
  };
  take_double("v1", c.v1);
  take_double("v2", c.v2);
  take_double("alpha", c.alpha);
  take_double("lambda", c.lambda);
  take_double("L", c.grid_half_width);
  take_double("x-min", c.x_min);
  take_double("x-max", c.x_max);
  if (!was_given("variant") && j.contains("variant")) c.variant = j.at("variant").get<std::string>();
  if (!was_given("set") && j.contains("set")) c.set_index = j.at("set").get<int>();
  if (!was_given("n") && j.contains("n")) c.n = j.at("n").get<int>();
  if (!was_given("N") && j.contains("N")) c.grid_points = j.at("N").get<std::size_t>();
  if (!was_given("tol") && j.contains("tol")) c.tolerance = j.at("tol").get<double>();
  if (!was_given("format") && j.contains("format")) c.output_format = j.at("format").get<std::string>();
  if (!was_given("output") && j.contains("output")) c.output_path = j.at("output").get<std::string>();
  if (!was_given("points") && j.contains("points")) c.sample_points = j.at("points").get<int>();
}

inline json params_json(const PotentialParams& p) {
  json j{{"v1", num(p.v1())}, {"v2", num(p.v2())}, {"alpha", num(p.alpha())}};
  if (p.v1() > 0.0) j["s"] = num(p.s());
  return j;
}

inline json set_json(const QesSet& s) {
  return {{"set", s.set_index}, {"n", s.n}, {"b1", s.b1.str()}, {"b1_prime", s.b1_prime.str()}};
}

inline json classification_json(const QesClassification& c) {
  json sets = json::array();
  for (const auto& s : c.sets) sets.push_back(set_json(s));
  return {{"lambda", num(c.lambda)}, {"m", num(2.0 * c.lambda)}, {"sets", sets}, {"total_levels", c.total_levels}};
}

inline json level_json(const QesLevel& l, const ClosedFormWavefunction& wf) {
  return {{"set", l.set.set_index},
          {"n", l.set.n},
          {"energy", num(l.energy)},
          {"coefficients", num_array(l.coefficients)},
          {"parity", parity_name(l.parity)},
          {"node_count", l.node_count},
          {"moving_poles", l.moving_poles},
          {"wavefunction",
           {{"p1", wf.p1.str()},
            {"p2", wf.p2.str()},
            {"C", num(wf.c)},
            {"alpha", num(wf.alpha)},
            {"coefficients", num_array(wf.coefficients)},
            {"parity", parity_name(wf.parity)}}}};
}

inline constexpr const char* kLambdaConvention =
    "lambda = -v2/(2 sqrt(v1) alpha) on the normalizable branch C = -sqrt(v1)/alpha; QES requires v2 < 0";

struct WorkingPoint {
  PotentialParams params;
  QesClassification classification;
};

inline WorkingPoint resolve_working_point(const CliConfig& c) {
  if (!c.v1) throw UsageError("--v1 is required");
  if (!(*c.v1 > 0.0)) throw UsageError("v1 must be positive");
  const double alpha = c.alpha.value_or(1.0);
  if (!(alpha != 0.0) || !std::isfinite(alpha)) throw UsageError("alpha must be finite and nonzero");
  if (c.set_index.has_value() != c.n.has_value()) throw UsageError("--set and --n must be given together");
  const int selectors = (c.v2 ? 1 : 0) + (c.set_index ? 1 : 0) + (c.lambda ? 1 : 0);
  if (selectors != 1) throw UsageError("give exactly one of --v2, (--set and --n), or --lambda");
  if (c.variant != "real") throw UsageError("solve/verify/sample support only the real variant");

  const double a = std::fabs(alpha);
  if (c.set_index) {
    const auto set = make_qes_set(*c.set_index, *c.n);
    const PotentialParams p(*c.v1, qes_target_v2(set, *c.v1, a), a);
    return {p, {set.lambda(), {set}, set.n + 1}};
  }
  const double v2 = c.v2 ? *c.v2 : -2.0 * std::sqrt(*c.v1) * a * *c.lambda;
  const PotentialParams p(*c.v1, v2, a);
  const double lambda = c.lambda ? *c.lambda : infinity_analysis(p).lambda;
  auto cls = enumerate_qes_sets(lambda);
  if (cls.sets.empty()) throw InadmissibleParametersError("no admissible QES sets for lambda = " + num(lambda));
  return {p, cls};
}

inline std::optional<oracle::GridSpec> grid_override(const CliConfig& c, const PotentialParams& p) {
  if (!c.grid_half_width && !c.grid_points) return std::nullopt;
  auto g = oracle::default_grid(p);
  if (c.grid_half_width) g.half_width = *c.grid_half_width;
  if (c.grid_points) g.points = *c.grid_points;
  return g;
}

inline json report_json(const oracle::VerificationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"label", row.label},
                    {"energy_analytic", num(row.energy_analytic)},
                    {"energy_oracle", num(row.energy_oracle)},
                    {"abs_gap", num(row.abs_gap)},
                    {"gap_h", num(row.gap_coarse)},
                    {"gap_h_half", num(row.gap_fine)},
                    {"error_ratio", num(row.error_ratio)},
                    {"oracle_index", row.oracle_index},
                    {"node_count_analytic", row.node_count_analytic},
                    {"node_count_oracle", row.node_count_oracle},
                    {"parity_analytic", parity_name(row.parity_analytic)},
                    {"parity_oracle", row.parity_oracle > 0 ? "even" : row.parity_oracle < 0 ? "odd" : "undetermined"},
                    {"parity_match", row.parity_match},
                    {"pass", row.pass}});
  return {{"rows", rows},
          {"unmatched_oracle_eigenvalues", num_array(r.unmatched_oracle)},
          {"convergence_order_estimate", num(r.convergence_order_estimate)},
          {"tolerance", num(r.tolerance)},
          {"grid", {{"L", num(r.grid.half_width)}, {"N", r.grid.points}, {"h", num(r.grid.step())}}},
          {"overall_pass", r.overall_pass}};
}

/// Printed energies of the reference tables at this working point, as claims.
inline std::vector<oracle::ClaimedLevel> paper_claims(const CliConfig& c, const WorkingPoint& wp) {
  const double a = wp.params.alpha();
  const double rv = std::sqrt(wp.params.v1());
  std::vector<oracle::ClaimedLevel> claims;
  if (c.assert_table_32) {
    if (std::fabs(wp.classification.lambda - 1.5) > 1e-9)
      throw UsageError("--assert-paper-table-3.2 needs the lambda = 3/2 working point");
    claims.push_back({"printed 3.2 set1", -a * a / 4.0 + a * rv, 0, Parity::Even});
    claims.push_back({"printed 3.2 set2", -a * a, 1, Parity::Odd});
  }
  if (c.assert_table_33) {
    if (std::fabs(wp.classification.lambda - 1.0) > 1e-9)
      throw UsageError("--assert-paper-table-3.3 needs the lambda = 1 working point");
    claims.push_back({"printed 3.3 set3", -a * a / 4.0 - a * rv, 0, Parity::Even});
    claims.push_back({"printed 3.3 set4", -a * a / 4.0 - a * rv, 1, Parity::Odd});
  }
  return claims;
}

inline std::string format_or(const CliConfig& c, const char* fallback) {
  return c.output_format.empty() ? fallback : c.output_format;
}

inline void require_json(const CliConfig& c) {
  if (format_or(c, "json") != "json") throw UsageError("this command only emits json");
}

} // namespace detail

struct CommandResult {
  int exit_code = kExitOk;
  std::string body;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline CommandResult cmd_classify(const CliConfig& c) {
  detail::require_json(c);
  if (!c.v1 || !c.v2) throw UsageError("classify needs --v1 and --v2");
  const Variant variant = parse_variant(c.variant);
  if (variant == Variant::RealSinhGordon && !(*c.v1 > 0.0)) throw UsageError("v1 must be positive");
  const PotentialParams p(*c.v1, *c.v2, c.alpha.value_or(1.0));
  const auto sym = classify_symmetry(p, variant);

  json doc;
  doc["command"] = "classify";
  doc["params"] = detail::params_json(p);
  doc["variant"] = std::string(variant_name(variant));
  doc["symmetry"] = {{"pt_symmetric", sym.pt_symmetric},
                     {"lambda", {{"re", num(sym.lambda_value.real())}, {"im", num(sym.lambda_value.imag())}}},
                     {"lambda_other_branch",
                      {{"re", num(-sym.lambda_value.real())}, {"im", num(-sym.lambda_value.imag())}}},
                     {"physical_qes_possible", sym.physical_qes_possible},
                     {"note", sym.note}};
  if (variant == Variant::RealSinhGordon) {
    const auto inf = infinity_analysis(p);
    doc["classification"] = detail::classification_json(enumerate_qes_sets(inf.lambda));
    doc["infinity"] = {{"C_physical", num(inf.c_physical)},
                       {"C_candidates", num_array({inf.c_candidates[0], inf.c_candidates[1]})},
                       {"lambda_convention", detail::kLambdaConvention}};
  } else {
    doc["classification"] = nullptr;
  }
  return {kExitOk, dump(doc)};
}

inline CommandResult cmd_solve(const CliConfig& c) {
  detail::require_json(c);
  const auto wp = detail::resolve_working_point(c);
  const auto levels = solve_classification(wp.classification.sets, wp.params);
  json arr = json::array();
  for (const auto& l : levels) arr.push_back(detail::level_json(l, wavefunction(l, wp.params)));
  json doc{{"command", "solve"},
           {"params", detail::params_json(wp.params)},
           {"classification", detail::classification_json(wp.classification)},
           {"levels", arr},
           {"lambda_convention", detail::kLambdaConvention}};
  return {kExitOk, dump(doc)};
}

inline CommandResult cmd_verify(const CliConfig& c) {
  detail::require_json(c);
  const auto wp = detail::resolve_working_point(c);
  json doc{{"command", "verify"},
           {"params", detail::params_json(wp.params)},
           {"classification", detail::classification_json(wp.classification)}};
  const auto grid = detail::grid_override(c, wp.params);
  try {
    oracle::VerificationReport report;
    if (c.assert_table_32 || c.assert_table_33) {
      doc["mode"] = "assert-paper";
      report = oracle::verify_levels(wp.params, detail::paper_claims(c, wp), c.tolerance, grid);
    } else {
      doc["mode"] = "analytic";
      const auto levels = solve_classification(wp.classification.sets, wp.params);
      report = oracle::verify_levels(wp.params, oracle::claims_from_levels(levels), c.tolerance, grid);
    }
    doc["report"] = detail::report_json(report);
    return {report.overall_pass ? kExitOk : kExitMismatch, dump(doc)};
  } catch (const MismatchError& e) {
    doc["report"] = {{"overall_pass", false}, {"mismatch", e.what()}};
    return {kExitMismatch, dump(doc)};
  }
}

inline CommandResult cmd_sample(const CliConfig& c) {
  const auto wp = detail::resolve_working_point(c);
  const double a = wp.params.alpha();
  const double lo = c.x_min.value_or(-5.0 / a);
  const double hi = c.x_max.value_or(5.0 / a);
  if (c.sample_points < 2 || !(hi > lo)) throw UsageError("sample needs --points >= 2 and x-max > x-min");
  const auto levels = solve_classification(wp.classification.sets, wp.params);
  std::vector<ClosedFormWavefunction> wfs;
  std::vector<std::string> names{"x", "V"};
  for (const auto& l : levels) {
    wfs.push_back(wavefunction(l, wp.params));
    names.push_back("psi_set" + std::to_string(l.set.set_index) + "_n" + std::to_string(l.set.n) + "_E" +
                    num(l.energy));
  }
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < c.sample_points; ++i) {
    const double x = i == c.sample_points - 1 ? hi : lo + (hi - lo) * i / (c.sample_points - 1);
    std::vector<double> row{x, real_potential(wp.params, x)};
    for (const auto& wf : wfs) row.push_back(evaluate_wavefunction(wf, x));
    rows.push_back(std::move(row));
  }

  const auto fmt = detail::format_or(c, "csv");
  if (fmt == "json") {
    json cols = json::object();
    for (std::size_t k = 0; k < names.size(); ++k) {
      std::vector<double> col;
      for (const auto& r : rows) col.push_back(r[k]);
      cols[names[k]] = num_array(col);
    }
    return {kExitOk, dump(json{{"command", "sample"}, {"params", detail::params_json(wp.params)}, {"columns", cols}})};
  }
  if (fmt != "csv") throw UsageError("unknown format '" + fmt + "'");
  std::ostringstream out;
  for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << names[k];
  out << "\r\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << num(r[k]);
    out << "\r\n";
  }
  return {kExitOk, out.str()};
}

inline CommandResult cmd_table(const CliConfig& c) {
  detail::require_json(c);
  const auto t = reproduce_paper_tables(c.v1.value_or(1.0), std::fabs(c.alpha.value_or(1.0)));
  json residue = json::array();
  for (const auto& r : t.residue_table)
    residue.push_back({{"set", r.set_index},
                       {"b1_printed", r.b1_printed.str()},
                       {"b1_prime_printed", r.b1_prime_printed.str()},
                       {"n_printed", r.n_printed},
                       {"m_condition_printed", r.m_condition_printed},
                       {"qes_condition_printed", r.qes_condition_printed},
                       {"residue_sum", r.residue_sum.str()},
                       {"m_printed_reading", r.m_printed_reading},
                       {"m_reconciled_reading", r.m_reconciled_reading},
                       {"qes_condition_reconciled", r.qes_condition_reconciled},
                       {"v2_for_n0", num(r.v2_for_n0)},
                       {"note", r.note}});
  json entries = json::array();
  int typos = 0, matches = 0;
  for (const auto& e : t.entries) {
    (e.flag == Adjudication::MatchesPaper ? matches : typos)++;
    entries.push_back({{"table", e.table},
                       {"set", e.set_label},
                       {"quantity", e.quantity},
                       {"lambda", num(e.lambda)},
                       {"v2", num(e.v2)},
                       {"printed", e.printed},
                       {"printed_value", e.printed_value ? json(num(*e.printed_value)) : json(nullptr)},
                       {"computed", e.computed},
                       {"computed_values", num_array(e.computed_values)},
                       {"oracle_confirmed", e.oracle_confirmed},
                       {"flag", adjudication_name(e.flag)},
                       {"note", e.note}});
  }
  json doc{{"command", "table"},
           {"v1", num(t.v1)},
           {"alpha", num(t.alpha)},
           {"residue_table", residue},
           {"energy_tables", entries},
           {"summary", {{"matches_paper", matches}, {"paper_typo_suspected", typos}}}};
  return {kExitOk, dump(doc)};
}

inline std::string error_document(const std::string& kind, const std::string& message) {
  return dump(json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", kExitUsage}});
}

/// Full CLI entry point; writes the document to `out` (or --output) and
/// diagnostics to `err`. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exactly-solvable spectrum of the generalized Sinh-Gordon potential", "qhj_spectra"};
  app.require_subcommand(1);
  CliConfig c;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--v1", c.v1, "coefficient of sinh^2(alpha x)");
    sub->add_option("--v2", c.v2, "coefficient of cosh(alpha x)");
    sub->add_option("--alpha", c.alpha, "inverse length scale");
    sub->add_option("--variant", c.variant, "real, i-cosh or i-sinh");
    sub->add_option("--set", c.set_index, "QES set index 1..4");
    sub->add_option("--n", c.n, "polynomial degree");
    sub->add_option("--lambda", c.lambda, "exponent at infinity");
    sub->add_option("--L", c.grid_half_width, "oracle grid half width");
    sub->add_option("--N", c.grid_points, "oracle grid interior points");
    sub->add_option("--tol", c.tolerance, "verification tolerance");
    sub->add_option("--format", c.output_format, "json or csv");
    sub->add_option("--output", c.output_path, "write the document here instead of stdout");
    sub->add_option("--config", config_path, "JSON file with default option values");
  };
  auto* classify = app.add_subcommand("classify", "symmetry and QES classification");
  auto* solve = app.add_subcommand("solve", "analytic QES levels and wavefunctions");
  auto* verify = app.add_subcommand("verify", "check analytic levels against the numerical oracle");
  auto* sample = app.add_subcommand("sample", "tabulate V and the wavefunctions");
  auto* table = app.add_subcommand("table", "reproduce and adjudicate the reference tables");
  for (auto* sub : {classify, solve, verify, sample, table}) add_common(sub);
  verify->add_flag("--assert-paper-table-3.2", c.assert_table_32, "check the printed M = 3 energies instead");
  verify->add_flag("--assert-paper-table-3.3", c.assert_table_33, "check the printed M = 2 energies instead");
  sample->add_option("--x-min", c.x_min);
  sample->add_option("--x-max", c.x_max);
  sample->add_option("--points", c.sample_points);

  std::vector<const char*> argv{"qhj_spectra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_document("usage", e.what());
    return kExitUsage;
  }

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("QHJ_SPECTRA_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file " + config_path);
      const json j = json::parse(in);
      std::vector<std::string> given;
      auto* active = app.get_subcommands().front();
      for (const auto* opt : active->get_options())
        if (opt->count() > 0) given.push_back(opt->get_single_name());
      detail::merge_config(c, j, given);
    }

    CommandResult result;
    if (classify->parsed()) result = cmd_classify(c);
    else if (solve->parsed()) result = cmd_solve(c);
    else if (verify->parsed()) result = cmd_verify(c);
    else if (sample->parsed()) result = cmd_sample(c);
    else result = cmd_table(c);

    if (c.output_path) {
      std::ofstream f(*c.output_path, std::ios::binary);
      if (!f) throw UsageError("cannot write " + *c.output_path);
      f << result.body;
    } else {
      out << result.body;
    }
    return result.exit_code;
  } catch (const Error& e) {
    out << error_document(e.kind(), e.what());
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    out << error_document("config", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    out << error_document("internal", e.what());
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace qhj::cli
