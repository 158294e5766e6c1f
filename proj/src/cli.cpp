#include "mubcert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mubcert/certify.hpp"
#include "mubcert/error.hpp"
#include "mubcert/io.hpp"
#include "mubcert/oracles.hpp"
#include "mubcert/qrac.hpp"

namespace mubcert {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

using BoundFn = std::function<double(double, int)>;

BoundFn bound_function(const std::string& column) {
  if (column == "entropy") return overlap_entropy_lower_bound;
  if (column == "norms") return norm_sum_lower_bound;
  if (column == "incompat") return incompatibility_bound_from_asp;
  if (column == "uncertainty") return uncertainty_bound_from_asp;
  throw Error(ErrorCode::InvalidParams, "unknown bound '" + column + "'");
}

std::optional<double> try_bound(const std::string& column, double p_bar, int dim) {
  try {
    return bound_function(column)(p_bar, dim);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidParams || e.code() == ErrorCode::InvalidDim) throw;
    return std::nullopt;
  }
}

/// Smallest p in [lo, p_Q] from which `nontrivial` holds, by bisection.
double left_edge(double lo, int dim, const std::function<bool(double)>& nontrivial) {
  double hi = ideal_asp(dim);
  if (nontrivial(lo)) return lo;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (nontrivial(mid) ? hi : lo) = mid;
  }
  return hi;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct Options {
  int dim = 0;
  std::string out_path;
  std::string measurements;
  std::optional<double> noise;
  SweepSpec sweep;
  std::vector<double> range;
  int restarts = 50;
  int iters = 200;
  std::uint64_t seed = 0;
  bool warm_start = false;
  std::string suite = "all";
  std::int64_t trials = 10000;
  int verify_dim = 4;
  bool json = false;
};

int cmd_mub(const Options& o, std::ostream& out) {
  const MeasurementPair pair = fourier_mub_pair(o.dim);
  write_or_print(o.out_path, dump_json(to_json(pair)), out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.measurements.empty() == (o.dim == 0)) {
    err << "certify: give exactly one of --measurements or --dim\n";
    return kExitUsage;
  }
  MeasurementPair pair = o.measurements.empty() ? fourier_mub_pair(o.dim) : read_measurement_file(o.measurements);
  if (o.noise) pair = depolarize(pair, *o.noise);
  const CertificationReport report = certification_report(pair);
  write_or_print(o.out_path, dump_json(to_json(report)), out);
  if (!o.out_path.empty() && o.out_path != "-") {
    const AspBounds& b = report.asp_bounds;
    out << "d=" << report.dim << " p_bar=" << format_real(report.p_bar, 12) << " p_q=" << format_real(b.p_q, 12)
        << " h_s_lower=" << format_real(b.h_s_lower, 12) << " incompat_upper="
        << (b.incompat_upper ? format_real(*b.incompat_upper, 12) : std::string("-")) << " consistent="
        << (report.consistent ? "yes" : "no") << "\n";
  }
  return report.consistent ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(Options o, std::ostream& out, std::ostream& err) {
  o.sweep.dim = o.dim;
  if (!o.range.empty()) {
    if (o.range.size() != 2) {
      err << "sweep: --range takes two values\n";
      return kExitUsage;
    }
    o.sweep.range = std::pair{o.range[0], o.range[1]};
  }
  std::vector<std::string> warnings;
  const std::string csv = sweep_csv(o.sweep, &warnings);
  for (const std::string& w : warnings) err << "warning: RangeOutsideNontrivial: " << w << "\n";
  write_or_print(o.out_path, csv, out);
  return kExitOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  SeesawOptions options;
  options.dim = o.dim;
  options.restarts = o.restarts;
  options.max_outer_iters = o.iters;
  options.seed = o.seed;
  if (o.warm_start) options.warm_start = fourier_mub_pair(o.dim);
  const SeesawResult result = seesaw_optimize(options);
  const std::string text = dump_json(to_json(result));
  if (!o.out_path.empty() && o.out_path != "-") write_text_file(o.out_path, text);
  out << "best_asp " << format_real(result.best_asp, 17) << "\n"
      << "gap " << format_real(ideal_asp(o.dim) - result.best_asp, 17) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), o.suite) != suite_names().end()) {
    suites.push_back(o.suite);
  } else {
    err << "UnknownSuite: '" << o.suite << "'\n";
    return kExitUsage;
  }
  bool all_passed = true;
  Json report = Json::array();
  for (const std::string& name : suites) {
    const SuiteOutcome outcome = run_suite(name, o.trials, o.verify_dim, o.seed);
    all_passed = all_passed && outcome.passed;
    if (o.json) {
      report.push_back(to_json(outcome));
    } else {
      out << (outcome.passed ? "PASS " : "FAIL ") << outcome.suite_name << " trials=" << outcome.trials
          << " worst_margin=" << format_real(outcome.worst_margin, 6)
          << " worst_case_seed=" << outcome.worst_case_seed;
      if (outcome.violations > 0) out << " violations=" << outcome.violations;
      out << "\n";
    }
  }
  if (o.json) write_or_print(o.out_path, dump_json(report), out);
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::vector<std::string> sweep_columns(const std::string& bound) {
  if (bound == "all") return {"entropy", "norms", "incompat", "uncertainty"};
  bound_function(bound);
  return {bound};
}

std::pair<double, double> nontrivial_region(const std::string& bound, int dim) {
  const double p_q = ideal_asp(dim);
  const Thresholds th = thresholds(dim);
  if (bound == "entropy") return {th.entropy_threshold, p_q};
  if (bound == "norms") return {th.p_0, p_q};
  if (bound == "incompat") return {incompatibility_nontrivial_threshold(dim), p_q};
  if (bound == "uncertainty") {
    return {left_edge(0.5, dim, [dim](double p) { return uncertainty_bound_from_asp(p, dim) > 0.0; }), p_q};
  }
  if (bound == "all") {
    double lo = p_q;
    for (const std::string& c : sweep_columns("all")) lo = std::min(lo, nontrivial_region(c, dim).first);
    return {lo, p_q};
  }
  throw Error(ErrorCode::InvalidParams, "unknown bound '" + bound + "'");
}

std::string sweep_csv(const SweepSpec& spec, std::vector<std::string>* warnings) {
  if (spec.dim < 2) throw Error(ErrorCode::InvalidDim, "sweep needs dim >= 2");
  if (spec.points < 2) throw Error(ErrorCode::InvalidParams, "sweep needs at least 2 points");
  const std::vector<std::string> columns = sweep_columns(spec.bound);
  const double p_q = ideal_asp(spec.dim);
  const auto [lo, hi] = spec.range.value_or(nontrivial_region(spec.bound, spec.dim));
  if (!(lo >= 0.5 && lo < hi && hi <= p_q + 1e-12)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "range [" << lo << ", " << hi << "] must satisfy 1/2 <= lo < hi <= p_Q = " << p_q;
    throw Error(ErrorCode::InvalidParams, msg.str());
  }

  std::ostringstream csv;
  csv << "p_bar";
  for (const std::string& c : columns) csv << "," << c;
  csv << "\n";
  std::vector<std::int64_t> outside(columns.size(), 0);
  for (int k = 0; k < spec.points; ++k) {
    const double p = k == spec.points - 1 ? hi : lo + (hi - lo) * k / (spec.points - 1);
    csv << format_real(p, 12);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::optional<double> value = try_bound(columns[c], p, spec.dim);
      const auto [region_lo, region_hi] = nontrivial_region(columns[c], spec.dim);
      if (p < region_lo || p > region_hi + 1e-12) ++outside[c];
      csv << ",";
      if (value) csv << format_real(*value, 12);
    }
    csv << "\n";
  }
  if (warnings && spec.range) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (outside[c] > 0) {
        warnings->push_back(std::to_string(outside[c]) + " rows outside the nontrivial region of '" + columns[c] + "'");
      }
    }
  }
  return csv.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certification bounds for mutually unbiased bases from QRAC success probabilities"};
  app.require_subcommand(1);
  Options o;

  auto* mub = app.add_subcommand("mub", "Write the computational/Fourier MUB pair as a measurement file");
  mub->add_option("--dim", o.dim, "Dimension d >= 2")->required();
  mub->add_option("--out", o.out_path, "Output path (stdout if omitted)");

  auto* certify = app.add_subcommand("certify", "Certification report for a measurement pair");
  certify->add_option("--measurements", o.measurements, "Measurement pair JSON file");
  certify->add_option("--dim", o.dim, "Use the built-in Fourier pair in this dimension");
  certify->add_option("--noise", o.noise, "Depolarize both measurements with visibility eta");
  certify->add_option("--out", o.out_path, "Report path (stdout if omitted)");

  auto* sweep = app.add_subcommand("sweep", "Tabulate ASP-derived bounds over p_bar as CSV");
  sweep->add_option("--dim", o.dim, "Dimension")->required();
  sweep->add_option("--bound", o.sweep.bound, "entropy | norms | incompat | uncertainty | all")
      ->check(CLI::IsMember({"entropy", "norms", "incompat", "uncertainty", "all"}));
  sweep->add_option("--points", o.sweep.points, "Grid points (>= 2)");
  sweep->add_option("--range", o.range, "p_lo p_hi")->expected(2);
  sweep->add_option("--out", o.out_path, "CSV path (stdout if omitted)");

  auto* optimize = app.add_subcommand("optimize", "Seesaw search over POVM pairs");
  optimize->add_option("--dim", o.dim, "Dimension")->required();
  optimize->add_option("--restarts", o.restarts, "Random restarts");
  optimize->add_option("--iters", o.iters, "Maximum outer iterations per restart");
  optimize->add_option("--seed", o.seed, "Master seed");
  optimize->add_flag("--warm-start", o.warm_start, "Start every restart from the Fourier pair");
  optimize->add_option("--out", o.out_path, "Result JSON path");

  auto* verify = app.add_subcommand("verify", "Run randomized inequality suites");
  verify->add_option("--suite", o.suite, "Suite name or 'all'");
  verify->add_option("--trials", o.trials, "Trials per suite (total grid points for hlemma)");
  verify->add_option("--dim", o.verify_dim, "Dimension");
  verify->add_option("--seed", o.seed, "Master seed");
  verify->add_flag("--json", o.json, "Print JSON instead of PASS/FAIL lines");
  verify->add_option("--out", o.out_path, "JSON output path (with --json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*mub) return cmd_mub(o, out);
    if (*certify) return cmd_certify(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*optimize) return cmd_optimize(o, out);
    if (*verify) return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mubcert
