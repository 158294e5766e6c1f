#pragma once

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

namespace mubcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Relative Hermiticity tolerance: ‖M − M†‖_F ≤ hermitian · max(1, ‖M‖_F).
inline constexpr double hermitian = 1e-9;
/// Eigenvalues in [−psd_clamp, 0) are rounding noise and clamp to zero.
inline constexpr double psd_clamp = 1e-9;
/// Top eigenvalues closer than this are reported as degenerate.
inline constexpr double degeneracy = 1e-10;
}  // namespace tol

/// Eigenvalues in non-decreasing order; column k of `eigenvectors` pairs with eigenvalue k.
struct HermitianEigen {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

struct TopEigenpair {
  double value = 0.0;
  ComplexVector vector;
  bool degenerate = false;
};

template <typename Derived>
double frobenius_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double rel_tol = tol::hermitian) {
  return m.rows() == m.cols() &&
         hermiticity_defect(m) <= rel_tol * std::max(1.0, frobenius_norm(m));
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Each eigenvector is rotated so that its first component of modulus above
/// 1e-10 is real and positive, which makes the output reproducible across runs.
/// Throws NotHermitian when ‖M − M†‖_F exceeds 1e-9 · max(1, ‖M‖_F).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Eigenvalues only, non-decreasing. Same precondition as hermitian_eigen.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Largest eigenvalue of a Hermitian matrix, no eigenvectors.
double lambda_max(const ComplexMatrix& m);

/// Largest singular value, sqrt(λ_max(M†M)).
double operator_norm(const ComplexMatrix& m);

/// Square root of a PSD matrix. Eigenvalues in [−1e-9, 0) clamp to zero;
/// anything more negative throws NotPsd.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// S^{-1/2} for a positive definite S. Throws NotPsd if λ_min ≤ floor.
ComplexMatrix inverse_sqrt(const ComplexMatrix& m, double floor = 0.0);

TopEigenpair top_eigenpair(const ComplexMatrix& m);

/// w(O) = max_θ λ_max((e^{iθ}O + e^{−iθ}O†)/2).
///
/// Scans 720 equally spaced angles in [0, 2π) and then refines around the best
/// one by golden-section search to 1e-10 in θ.
double numerical_radius(const ComplexMatrix& o);

ComplexMatrix projector(const ComplexVector& v);

}  // namespace mubcert
