#include "mubcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mubcert/error.hpp"

namespace mubcert {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::DimMismatch, msg.str());
  }
}

void require_hermitian(const ComplexMatrix& m) {
  require_square(m);
  if (!is_hermitian(m)) {
    std::ostringstream msg;
    msg << "||M - M^dag||_F = " << hermiticity_defect(m);
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
}

void fix_phase(ComplexVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > 1e-10) {
      v *= std::conj(v(k)) / mag;
      v(k) = Complex(std::abs(v(k)), 0.0);
      return;
    }
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    ComplexVector col = out.eigenvectors.col(k);
    fix_phase(col);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double lambda_max(const ComplexMatrix& m) { return hermitian_eigenvalues(m).maxCoeff(); }

double operator_norm(const ComplexMatrix& m) {
  require_square(m);
  const ComplexMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  RealVector root(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < root.size(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda < -tol::psd_clamp) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " below -" << tol::psd_clamp;
      throw Error(ErrorCode::NotPsd, msg.str());
    }
    root(k) = std::sqrt(std::max(0.0, lambda));
  }
  return eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& m, double floor) {
  const HermitianEigen eig = hermitian_eigen(m);
  if (eig.eigenvalues(0) <= floor) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << eig.eigenvalues(0) << " not above " << floor;
    throw Error(ErrorCode::NotPsd, msg.str());
  }
  const RealVector inv_root = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  return eig.eigenvectors * inv_root.asDiagonal() * eig.eigenvectors.adjoint();
}

TopEigenpair top_eigenpair(const ComplexMatrix& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  const Eigen::Index n = eig.eigenvalues.size();
  TopEigenpair top;
  top.value = eig.eigenvalues(n - 1);
  top.vector = eig.eigenvectors.col(n - 1);
  top.degenerate = n > 1 && top.value - eig.eigenvalues(n - 2) <= tol::degeneracy;
  return top;
}

double numerical_radius(const ComplexMatrix& o) {
  require_square(o);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(o.rows());
  ComplexMatrix rotated(o.rows(), o.cols());
  auto value_at = [&](double theta) {
    const Complex phase = std::polar(1.0, theta);
    rotated.noalias() = 0.5 * (phase * o + std::conj(phase) * o.adjoint());
    solver.compute(rotated, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
  };

  constexpr int grid = 720;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double step = two_pi / grid;
  // H(θ + π) = −H(θ)
  double best_theta = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid / 2; ++k) {
    const double theta = k * step;
    value_at(theta);
    const double top = solver.eigenvalues()(o.rows() - 1);
    const double opposite = -solver.eigenvalues()(0);
    if (top > best) {
      best = top;
      best_theta = theta;
    }
    if (opposite > best) {
      best = opposite;
      best_theta = theta + std::numbers::pi;
    }
  }

  // golden-section maximisation on [best - step, best + step]
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value_at(x1);
    }
  }
  return std::max({best, f1, f2});
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace mubcert
