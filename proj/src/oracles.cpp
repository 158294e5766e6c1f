#include "mubcert/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "mubcert/certify.hpp"
#include "mubcert/error.hpp"
#include "mubcert/parallel.hpp"
#include "mubcert/qrac.hpp"

namespace mubcert {

namespace {

const double kAlpha = 2.0 - std::numbers::sqrt2;

struct TrialResult {
  double margin = 0.0;
  bool violation = false;
};

SuiteOutcome run_trials(std::string name, std::int64_t trials, std::uint64_t seed, double tolerance,
                        const std::function<TrialResult(std::uint64_t)>& trial) {
  if (trials < 1) throw Error(ErrorCode::InvalidParams, name + ": trials must be >= 1");
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), [&](std::size_t t) { results[t] = trial(derive_seed(seed, t)); });

  SuiteOutcome out{std::move(name), trials, std::numeric_limits<double>::infinity(), 0, tolerance, 0, false};
  for (std::size_t t = 0; t < results.size(); ++t) {
    if (results[t].violation) ++out.violations;
    if (results[t].margin < out.worst_margin) {
      out.worst_margin = results[t].margin;
      out.worst_case_seed = derive_seed(seed, t);
    }
  }
  out.passed = out.worst_margin >= -tolerance && out.violations == 0;
  return out;
}

void require_suite_dim(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDim, "suites need d >= 2, got " + std::to_string(d));
}

ComplexMatrix low_rank_psd(std::mt19937_64& rng, int d, int rank) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(d, rank);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < rank; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g * g.adjoint();
}

}  // namespace

double h_lemma_value(double x, double y) { return x + y - kAlpha * x * y - std::hypot(x, y); }

double kittaneh_max_margin(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double rhs = std::max(operator_norm(a), operator_norm(b)) + operator_norm(psd_sqrt(a) * psd_sqrt(b));
  return rhs - operator_norm(a + b);
}

double kittaneh_quadratic_margin(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const double overlap = operator_norm(psd_sqrt(a) * psd_sqrt(b));
  const double rhs = 0.5 * (na + nb + std::sqrt((na - nb) * (na - nb) + 4.0 * overlap * overlap));
  return rhs - operator_norm(a + b);
}

double numerical_radius_margin(const ComplexMatrix& o) {
  const double w = numerical_radius(o);
  return 0.5 * operator_norm(o.adjoint() * o + o * o.adjoint()) - w * w;
}

double trace_square_margin(const Povm& povm) {
  const PovmStats stats = povm_stats(povm);
  double squared = 0.0;
  for (double tr : stats.traces) squared += tr * tr;
  const double q = std::min(stats.norm_sum, static_cast<double>(povm.dim()));
  return trace_square_upper_bound(q, povm.dim()) - squared;
}

double AspChainSlacks::min() const { return std::min({strengthened, penalty, overlap_vs_trace, ideal}); }

AspChainSlacks asp_chain_slacks(const MeasurementPair& pair) {
  const int d = pair.dim();
  const double scale = 1.0 / (2.0 * d * d);
  const OverlapData data = overlap_data(pair);
  double strengthened = 0.0;
  double plain = 0.0;
  double trace_roots = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double s = data.s(i, j);
      strengthened += s - kAlpha * s * data.n(i, j);
      plain += s;
      trace_roots += std::sqrt(std::max(0.0, data.t(i, j)));
    }
  }
  AspChainSlacks out;
  out.p_bar = asp(QracConfiguration(pair, optimal_states(pair).states));
  out.strengthened = 0.5 + scale * strengthened - out.p_bar;
  out.penalty = scale * (plain - strengthened);
  out.overlap_vs_trace = scale * (trace_roots - plain);
  out.ideal = ideal_asp(d) - out.p_bar;
  return out;
}

double schur_margin(const std::vector<double>& t, int d) {
  double roots = 0.0;
  for (double v : t) roots += std::sqrt(std::max(0.0, v));
  const double dd = d;
  return dd * std::sqrt(dd) - roots;
}

double certification_margin(const MeasurementPair& pair) {
  const CertificationReport report = certification_report(pair);
  double worst = std::numeric_limits<double>::infinity();
  for (const ConsistencyCheck& c : report.checks) worst = std::min(worst, c.slack);
  return worst;
}

std::pair<ComplexMatrix, ComplexMatrix> kittaneh_instance(int d, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  std::uniform_int_distribution<int> rank(1, d);
  const int ra = rank(rng);
  const int rb = rank(rng);
  ComplexMatrix a = low_rank_psd(rng, d, ra);
  ComplexMatrix b = low_rank_psd(rng, d, rb);
  return {std::move(a), std::move(b)};
}

MeasurementPair random_qrac_pair(int d, std::uint64_t trial_seed) {
  return {random_povm(d, d, derive_seed(trial_seed, 0)), random_povm(d, d, derive_seed(trial_seed, 1))};
}

std::vector<double> random_overlap_profile(int d, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> t(static_cast<std::size_t>(d * d));
  double total = 0.0;
  for (double& v : t) {
    v = expo(rng);
    total += v;
  }
  for (double& v : t) v *= d / total;
  return t;
}

MeasurementPair noisy_mixture_pair(int d, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double eta = 1.0 - std::pow(unit(rng), 3.0);
  const double weight = std::pow(unit(rng), 3.0);
  const ComplexMatrix u = random_unitary(d, derive_seed(trial_seed, 10));
  const MeasurementPair fourier = fourier_mub_pair(d);
  const Povm a = depolarize(conjugate(fourier.a, u), eta);
  const Povm b = depolarize(conjugate(fourier.b, u), eta);
  const MeasurementPair noise = random_qrac_pair(d, derive_seed(trial_seed, 11));
  return {mix(a, noise.a, weight), mix(b, noise.b, weight)};
}

SuiteOutcome check_h_lemma(int grid_points_per_axis) {
  if (grid_points_per_axis < 2) throw Error(ErrorCode::InvalidParams, "hlemma grid needs >= 2 points per axis");
  const int n = grid_points_per_axis;
  SuiteOutcome out{"hlemma", static_cast<std::int64_t>(n) * n, std::numeric_limits<double>::infinity(), 0, 1e-12, 0,
                   false};
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double y = static_cast<double>(j) / (n - 1);
      const double h = h_lemma_value(x, y);
      if (h < out.worst_margin) {
        out.worst_margin = h;
        out.worst_case_seed = static_cast<std::uint64_t>(i) * n + j;
      }
    }
  }
  out.passed = out.worst_margin >= -out.tolerance;
  return out;
}

SuiteOutcome check_kittaneh_max(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("kittaneh-max", trials, seed, 1e-9, [d](std::uint64_t s) {
    const auto [a, b] = kittaneh_instance(d, s);
    return TrialResult{kittaneh_max_margin(a, b)};
  });
}

SuiteOutcome check_kittaneh_quadratic(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("kittaneh-quad", trials, seed, 1e-9, [d](std::uint64_t s) {
    const auto [a, b] = kittaneh_instance(d, s);
    return TrialResult{kittaneh_quadratic_margin(a, b)};
  });
}

SuiteOutcome check_numerical_radius(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("radius", trials, seed, 1e-8,
                    [d](std::uint64_t s) { return TrialResult{numerical_radius_margin(random_ginibre(d, s))}; });
}

SuiteOutcome check_asp_chain(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("asp-chain", trials, seed, 1e-9,
                    [d](std::uint64_t s) { return TrialResult{asp_chain_slacks(random_qrac_pair(d, s)).min()}; });
}

SuiteOutcome check_schur_concavity(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("schur", trials, seed, 1e-9, [d](std::uint64_t s) {
    const std::vector<double> t = random_overlap_profile(d, s);
    const double margin = schur_margin(t, d);
    double deviation = 0.0;
    for (double v : t) deviation = std::max(deviation, std::abs(v - 1.0 / d));
    return TrialResult{margin, deviation > 1e-3 && margin <= 1e-6};
  });
}

SuiteOutcome check_trace_square(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("tracesq", trials, seed, 1e-8,
                    [d](std::uint64_t s) { return TrialResult{trace_square_margin(random_povm(d, d, s))}; });
}

SuiteOutcome check_certification_consistency(std::int64_t trials, int d, std::uint64_t seed) {
  require_suite_dim(d);
  return run_trials("consistency", trials, seed, kConsistencyTol,
                    [d](std::uint64_t s) { return TrialResult{certification_margin(noisy_mixture_pair(d, s))}; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hlemma", "kittaneh-max", "kittaneh-quad", "radius",
                                              "asp-chain", "schur", "tracesq", "consistency"};
  return names;
}

SuiteOutcome run_suite(const std::string& name, std::int64_t trials, int d, std::uint64_t seed) {
  if (name == "hlemma") {
    const int axis = std::max(2, static_cast<int>(std::llround(std::sqrt(static_cast<double>(trials)))));
    return check_h_lemma(axis);
  }
  if (name == "kittaneh-max") return check_kittaneh_max(trials, d, seed);
  if (name == "kittaneh-quad") return check_kittaneh_quadratic(trials, d, seed);
  if (name == "radius") return check_numerical_radius(trials, d, seed);
  if (name == "asp-chain") return check_asp_chain(trials, d, seed);
  if (name == "schur") return check_schur_concavity(trials, d, seed);
  if (name == "tracesq") return check_trace_square(trials, d, seed);
  if (name == "consistency") return check_certification_consistency(trials, d, seed);
  throw Error(ErrorCode::UnknownSuite, "'" + name + "'");
}

}  // namespace mubcert
