#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mubcert/linalg.hpp"

namespace mubcert {

/// A validated POVM: PSD operators of one dimension summing to the identity.
///
/// Instances only come out of validate_povm (or operations that call it), so
/// holding a Povm means the invariants were checked.
class Povm {
 public:
  int dim() const noexcept { return dim_; }
  int outcomes() const noexcept { return static_cast<int>(operators_.size()); }
  const ComplexMatrix& operator[](std::size_t i) const { return operators_[i]; }
  std::span<const ComplexMatrix> operators() const noexcept { return operators_; }

 private:
  friend Povm validate_povm(std::vector<ComplexMatrix> candidate);
  Povm(int dim, std::vector<ComplexMatrix> ops) : dim_(dim), operators_(std::move(ops)) {}

  int dim_;
  std::vector<ComplexMatrix> operators_;
};

/// Checks Hermiticity (1e-9 relative), PSD (λ ≥ −1e-9) and completeness
/// (‖Σ A_i − I‖_F ≤ 1e-9). Rejects rather than repairs.
Povm validate_povm(std::vector<ComplexMatrix> candidate);

struct MeasurementPair {
  Povm a;
  Povm b;

  /// Throws DimMismatch when the two POVMs act on different dimensions.
  MeasurementPair(Povm a_in, Povm b_in);

  int dim() const noexcept { return a.dim(); }
};

/// t_ij = tr(A_i B_j), s_ij = ‖√A_i √B_j‖, n_ij = 1 − (‖A_i‖ + ‖B_j‖)/2.
struct OverlapData {
  RealMatrix t;
  RealMatrix s;
  RealMatrix n;
};

struct PovmStats {
  double norm_sum = 0.0;
  std::vector<double> traces;
  std::vector<double> norms;
  bool rank1_projective = false;
};

/// Computational basis paired with the Fourier basis |b_j⟩ = d^{-1/2} Σ_k ω^{jk}|k⟩.
MeasurementPair fourier_mub_pair(int d);

/// Both POVMs equal to {I/d} repeated `outcomes` times.
MeasurementPair trivial_pair(int d, int outcomes);

/// Rank-1 projectors onto the columns of a unitary.
Povm basis_povm(const ComplexMatrix& unitary);

bool is_rank1_projective(const Povm& povm, double tol);

bool is_mub_pair(const MeasurementPair& pair, double tol);

/// A_i ↦ η A_i + (1 − η) tr(A_i) I/d. Throws EtaOutOfRange unless 0 ≤ η ≤ 1.
Povm depolarize(const Povm& povm, double eta);

MeasurementPair depolarize(const MeasurementPair& pair, double eta);

/// Operator-wise convex combination (1 − w) P + w Q of two POVMs with equal shape.
Povm mix(const Povm& p, const Povm& q, double weight_q);

OverlapData overlap_data(const MeasurementPair& pair);

PovmStats povm_stats(const Povm& povm);

/// Ginibre-normalised random POVM: G_i = M_i M_i†, A_i = S^{-1/2} G_i S^{-1/2}, S = Σ G_i.
/// Deterministic in `seed`. Throws DegenerateSample if S has an eigenvalue below 1e-12.
Povm random_povm(int d, int outcomes, std::uint64_t seed);

/// M M† with M a d×d standard complex Gaussian matrix drawn from `seed`.
ComplexMatrix random_psd(int d, std::uint64_t seed);

/// d×d matrix with independent standard complex Gaussian entries.
ComplexMatrix random_ginibre(int d, std::uint64_t seed);

/// Haar-random unitary via QR of a Ginibre matrix with the phase of R's diagonal removed.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Simultaneous unitary conjugation A_i ↦ U A_i U†.
Povm conjugate(const Povm& povm, const ComplexMatrix& unitary);

}  // namespace mubcert
