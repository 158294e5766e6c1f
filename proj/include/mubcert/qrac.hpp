#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mubcert/measurements.hpp"

namespace mubcert {

/// Preparation grid for the 2^d → 1 code. `states[i * d + j]` encodes the input pair (i, j).
struct QracConfiguration {
  MeasurementPair pair;
  std::vector<ComplexMatrix> states;

  /// Validates shape (d outcomes on both sides, d×d states) and that each state
  /// is PSD with unit trace within 1e-9.
  QracConfiguration(MeasurementPair pair_in, std::vector<ComplexMatrix> states_in);

  int dim() const noexcept { return pair.dim(); }
  const ComplexMatrix& state(int i, int j) const { return states[static_cast<std::size_t>(i * dim() + j)]; }
};

struct OptimalStates {
  std::vector<ComplexMatrix> states;  // row-major over (i, j)
  std::vector<bool> degenerate;       // top eigenvalue of A_i + B_j degenerate within 1e-10
  std::vector<double> top_eigenvalues;

  bool any_degenerate() const;
};

struct SeesawOptions {
  int dim = 2;
  int restarts = 1;
  int max_outer_iters = 200;
  std::uint64_t seed = 0;
  /// Replaces the random initial pair of every restart.
  std::optional<MeasurementPair> warm_start;
};

struct SeesawResult {
  double best_asp = 0.0;
  QracConfiguration best_configuration;
  int restarts_run = 0;
  std::vector<int> iterations_per_restart;
  std::vector<double> restart_best_asp;
  bool converged = false;
};

/// Throws InvalidParams unless both POVMs have exactly dim outcomes.
void require_qrac_pair(const MeasurementPair& pair);

/// (1/2d²) Σ_ij tr[ρ_ij (A_i + B_j)].
double asp(const QracConfiguration& config);

/// ρ_ij = projector onto the top eigenvector of A_i + B_j.
OptimalStates optimal_states(const MeasurementPair& pair);

/// (1/2d²) Σ_ij ‖A_i + B_j‖, the success probability reached by optimal_states.
double optimal_asp(const MeasurementPair& pair);

/// One fixed-point sweep of the discrimination iteration
/// A_i ← L^{-1/2} R_i A_i R_i L^{-1/2}, L = Σ_i R_i A_i R_i, maximising Σ_i tr(R_i A_i).
///
/// Runs up to 50 inner steps or until Σ_i ‖ΔA_i‖_F < 1e-10. A step that lowers the
/// objective by more than 1e-12 is discarded and ends the sweep.
Povm improve_measurement(const Povm& current, const std::vector<ComplexMatrix>& weights);

/// Alternates optimal_states with improve_measurement on A then B, from random
/// (or warm-started) initial pairs. Restarts are independent and seeded from
/// (seed, restart index); the result is the best restart, lowest index on ties.
SeesawResult seesaw_optimize(const SeesawOptions& options);

}  // namespace mubcert
