#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mubcert/measurements.hpp"

namespace mubcert {

/// Closed-form certificates derived from an observed average success probability.
///
/// All entropies are in bits. Optional fields are empty when p_bar lies outside
/// the region where the corresponding bound can be evaluated.
struct AspBounds {
  int d = 0;
  double p_bar = 0.0;
  double p_q = 0.0;
  double p_0 = 0.0;
  double entropy_threshold = 0.0;
  double s_min = 0.0;
  double s_max = 1.0;
  double h_s_lower = 0.0;
  std::optional<double> norm_sum_lower;
  std::optional<double> incompat_upper;
  double uncertainty_lower = 0.0;
};

struct DirectQuantities {
  double overlap_entropy = 0.0;
  double norm_sum_a = 0.0;
  double norm_sum_b = 0.0;
  OverlapData overlap_data;
  std::optional<double> incompat_upper_direct;  // empty when both POVMs are trivial
  double uncertainty_lower_direct = 0.0;
  bool mub_flag = false;
};

/// One "direct quantity respects its ASP-derived bound" comparison; slack ≥ −1e-8 passes.
struct ConsistencyCheck {
  std::string name;
  double slack = 0.0;
  bool passed = true;
};

struct CertificationReport {
  int dim = 0;
  double p_bar = 0.0;
  AspBounds asp_bounds;
  DirectQuantities direct;
  std::vector<bool> degeneracy_flags;  // row-major over (i, j)
  std::vector<ConsistencyCheck> checks;
  bool consistent = true;
};

struct SRange {
  double s_min = 0.0;
  double s_max = 1.0;
};

struct Thresholds {
  double p_0 = 0.0;
  double entropy_threshold = 0.0;
};

struct UncertaintyDirect {
  double bound = 0.0;                  // −log₂ max_ij s_ij²
  std::optional<double> entropy_sum;   // H(A)_ρ + H(B)_ρ when a state was given
  bool holds = true;                   // entropy_sum ≥ bound − 1e-9
};

inline constexpr double kConsistencyTol = 1e-8;

/// ½(1 + 1/√d).
double ideal_asp(int d);

Thresholds thresholds(int d);

/// 2·log₂(Σ √p_i). Entries down to −1e-12 are treated as zero.
double renyi_half_entropy(std::span<const double> dist);

double shannon_entropy(std::span<const double> dist);

/// Shannon entropy of {tr(A_i ρ)}.
double outcome_entropy(const Povm& povm, const ComplexMatrix& rho);

/// Rényi-½ entropy of {t_ij / d}.
double overlap_entropy(const MeasurementPair& pair);

double overlap_entropy_lower_bound(double p_bar, int d);

SRange s_range(double p_bar, int d);

/// Lower bound on Σ_i ‖A_i‖ (and Σ_j ‖B_j‖). Defined on [p_0, p_Q]; the value at
/// p_0 is the right limit d − (2 + √2)/d.
double norm_sum_lower_bound(double p_bar, int d);

double incompatibility_bound_direct(const MeasurementPair& pair);

double incompatibility_bound_from_asp(double p_bar, int d);

/// Smallest p_bar above which incompatibility_bound_from_asp drops below 1.
double incompatibility_nontrivial_threshold(int d);

/// d + (d − q)(d − q + 1), the cap on Σ_i (tr A_i)² given Σ_i ‖A_i‖ ≥ q.
double trace_square_upper_bound(double q, int d);

UncertaintyDirect uncertainty_bound_direct(const MeasurementPair& pair,
                                           const std::optional<ComplexMatrix>& rho = std::nullopt);

double uncertainty_bound_from_asp(double p_bar, int d);

/// Every ASP-derived certificate at once. p_bar below ½ yields the trivial
/// values (s-range [0, 1], zero entropies, no optional bounds).
AspBounds asp_bounds(double p_bar, int d);

CertificationReport certification_report(const MeasurementPair& pair);

}  // namespace mubcert
