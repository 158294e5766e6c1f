#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubcert/measurements.hpp"

namespace mubcert {

/// Result of one randomized (or grid) inequality check.
///
/// `worst_margin` is the most negative slack seen (RHS − LHS in the inequality's
/// own orientation). `worst_case_seed` replays that trial in isolation: pass it as
/// the trial seed to the matching *_margin helper after regenerating the inputs, or
/// for the grid suite it is the flat grid index.
struct SuiteOutcome {
  std::string suite_name;
  std::int64_t trials = 0;
  double worst_margin = 0.0;
  std::uint64_t worst_case_seed = 0;
  double tolerance = 0.0;
  std::int64_t violations = 0;  // extra failures not captured by worst_margin (strictness)
  bool passed = false;
};

// Per-instance slacks; each is ≥ 0 when the inequality holds.
double h_lemma_value(double x, double y);
double kittaneh_max_margin(const ComplexMatrix& a, const ComplexMatrix& b);
double kittaneh_quadratic_margin(const ComplexMatrix& a, const ComplexMatrix& b);
double numerical_radius_margin(const ComplexMatrix& o);
double trace_square_margin(const Povm& povm);

/// Slack of every link in
///   p̄ ≤ ½ + Σ[s − (2−√2)s n]/2d² ≤ ½ + Σ s/2d² ≤ ½ + Σ √t/2d²,  p̄ ≤ p_Q.
struct AspChainSlacks {
  double p_bar = 0.0;
  double strengthened = 0.0;   // first link
  double penalty = 0.0;        // second link
  double overlap_vs_trace = 0.0;
  double ideal = 0.0;          // p_Q − p̄
  double min() const;
};
AspChainSlacks asp_chain_slacks(const MeasurementPair& pair);

/// d√d − Σ √t_ij for t summing to d.
double schur_margin(const std::vector<double>& t, int d);

/// Minimum consistency slack of a certification report for `pair`.
double certification_margin(const MeasurementPair& pair);

// Random instances, reproducible from the per-trial seed reported in SuiteOutcome.
std::pair<ComplexMatrix, ComplexMatrix> kittaneh_instance(int d, std::uint64_t trial_seed);
MeasurementPair random_qrac_pair(int d, std::uint64_t trial_seed);
std::vector<double> random_overlap_profile(int d, std::uint64_t trial_seed);
MeasurementPair noisy_mixture_pair(int d, std::uint64_t trial_seed);

SuiteOutcome check_h_lemma(int grid_points_per_axis);
SuiteOutcome check_kittaneh_max(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_kittaneh_quadratic(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_numerical_radius(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_asp_chain(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_schur_concavity(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_trace_square(std::int64_t trials, int d, std::uint64_t seed);
SuiteOutcome check_certification_consistency(std::int64_t trials, int d, std::uint64_t seed);

/// Names accepted by run_suite: hlemma, kittaneh-max, kittaneh-quad, radius,
/// asp-chain, schur, tracesq, consistency.
const std::vector<std::string>& suite_names();

/// Dispatch by name. For hlemma, `trials` is the total number of grid points
/// and the per-axis count is its rounded square root. Throws UnknownSuite.
SuiteOutcome run_suite(const std::string& name, std::int64_t trials, int d, std::uint64_t seed);

}  // namespace mubcert
