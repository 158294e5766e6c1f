#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mubcert/error.hpp"
#include "mubcert/linalg.hpp"
#include "mubcert/measurements.hpp"
#include "mubcert/parallel.hpp"

using namespace mubcert;

namespace {

ComplexMatrix jordan_block() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  const ComplexMatrix g = random_ginibre(d, seed);
  return 0.5 * (g + g.adjoint());
}

// Independent θ-grid for w(O): 20000 angles, no refinement.
double dense_grid_radius(const ComplexMatrix& o) {
  double best = -1.0;
  for (int k = 0; k < 20000; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 20000;
    const Complex phase = std::polar(1.0, theta);
    const ComplexMatrix h = 0.5 * (phase * o + std::conj(phase) * o.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

}  // namespace

TEST_CASE("hermitian_eigen on a diagonal matrix orders eigenvalues ascending") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  const HermitianEigen eig = hermitian_eigen(m);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
  // first eigenvector is e2, second e1, both with positive real leading entry
  CHECK(std::abs(eig.eigenvectors(1, 0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(eig.eigenvectors(0, 1) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("hermitian_eigen on Pauli X") {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const HermitianEigen eig = hermitian_eigen(x);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const ComplexMatrix m = random_hermitian(d, seed);
    const HermitianEigen eig = hermitian_eigen(m);
    const ComplexMatrix rebuilt = eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
    CHECK((m - rebuilt).norm() <= 1e-8 * std::max(1.0, m.norm()));
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - ComplexMatrix::Identity(d, d)).norm() <= 1e-9);
    CHECK(std::abs(eig.eigenvalues.sum() - m.trace().real()) <= 1e-8);
    for (int k = 1; k < d; ++k) CHECK(eig.eigenvalues(k - 1) <= eig.eigenvalues(k));
    // phase convention: first significant entry of every column real positive
    for (int k = 0; k < d; ++k) {
      for (int r = 0; r < d; ++r) {
        const Complex v = eig.eigenvectors(r, k);
        if (std::abs(v) > 1e-10) {
          CHECK(v.real() > 0.0);
          CHECK(std::abs(v.imag()) < 1e-14);
          break;
        }
      }
    }
  }
}

TEST_CASE("hermitian_eigen is deterministic") {
  const ComplexMatrix m = random_hermitian(5, 99);
  const HermitianEigen a = hermitian_eigen(m);
  const HermitianEigen b = hermitian_eigen(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  CHECK_THROWS_AS(hermitian_eigen(jordan_block()), Error);
  try {
    hermitian_eigen(jordan_block());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("operator_norm examples") {
  for (int d = 1; d <= 5; ++d) CHECK(operator_norm(ComplexMatrix::Identity(d, d)) == doctest::Approx(1.0));
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -4.0;
  CHECK(operator_norm(m) == doctest::Approx(4.0));
  CHECK(operator_norm(jordan_block()) == doctest::Approx(1.0));
}

TEST_CASE("frobenius_norm examples") {
  CHECK(frobenius_norm(ComplexMatrix::Identity(3, 3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(frobenius_norm(jordan_block()) == doctest::Approx(1.0));
}

TEST_CASE("norm properties on random matrices") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int d = 1 + static_cast<int>(seed % 6);
    const ComplexMatrix m = random_ginibre(d, derive_seed(seed, 0));
    const ComplexMatrix n = random_ginibre(d, derive_seed(seed, 1));
    CHECK(operator_norm(m) <= frobenius_norm(m) + 1e-12);
    CHECK(operator_norm(m + n) <= operator_norm(m) + operator_norm(n) + 1e-9);
    CHECK(operator_norm(m * n) <= operator_norm(m) * operator_norm(n) + 1e-9);
  }
}

TEST_CASE("psd_sqrt examples") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = 9.0;
  const ComplexMatrix r = psd_sqrt(m);
  CHECK(std::abs(r(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(r(1, 1) - 3.0) < 1e-12);
  CHECK(std::abs(r(0, 1)) < 1e-12);

  ComplexVector v(3);
  v << Complex(1, 1), Complex(0, 2), Complex(-1, 0);
  v.normalize();
  const ComplexMatrix p = projector(v);
  CHECK((psd_sqrt(p) - p).norm() < 1e-12);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix g = random_psd(1 + static_cast<int>(seed % 6), seed);
    const ComplexMatrix root = psd_sqrt(g);
    CHECK((root * root - g).norm() <= 1e-7);
    CHECK(hermitian_eigenvalues(root)(0) >= -1e-12);
  }
}

TEST_CASE("psd_sqrt clamps rounding noise and rejects negative input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -5e-10;
  CHECK(std::abs(psd_sqrt(m)(1, 1)) == 0.0);
  m(1, 1) = -1e-6;
  try {
    psd_sqrt(m);
    FAIL("expected NotPsd");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPsd);
  }
}

TEST_CASE("top_eigenpair examples") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 3.0;
  m(2, 2) = 2.0;
  TopEigenpair top = top_eigenpair(m);
  CHECK(top.value == doctest::Approx(3.0));
  CHECK(std::abs(top.vector(1) - Complex(1.0, 0.0)) < 1e-12);
  CHECK_FALSE(top.degenerate);

  ComplexMatrix h(2, 2);
  h << 0.5, 0.5, 0.5, 0.5;
  top = top_eigenpair(h);
  CHECK(top.value == doctest::Approx(1.0));
  CHECK(std::abs(top.vector(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(top.vector(1) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);

  // |0><0| + |+><+| has top eigenvalue 1 + 1/sqrt(2)
  const MeasurementPair pair = fourier_mub_pair(2);
  top = top_eigenpair(pair.a[0] + pair.b[0]);
  CHECK(top.value == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));

  top = top_eigenpair(ComplexMatrix::Identity(3, 3));
  CHECK(top.degenerate);
}

TEST_CASE("numerical_radius examples") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix h = random_hermitian(4, seed);
    CHECK(std::abs(numerical_radius(h) - operator_norm(h)) <= 1e-8);
  }
  CHECK(std::abs(numerical_radius(jordan_block()) - 0.5) <= 1e-10);
  CHECK(std::abs(dense_grid_radius(jordan_block()) - 0.5) <= 1e-10);
}

TEST_CASE("numerical_radius agrees with a dense grid and respects its norm bounds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix o = random_ginibre(3, seed + 1000);
    const double w = numerical_radius(o);
    // the refined value can only beat a finite grid, and by little
    const double grid = dense_grid_radius(o);
    CHECK(w >= grid - 1e-12);
    CHECK(w - grid <= 1e-6);
    CHECK(w <= operator_norm(o) + 1e-8);
    CHECK(w >= 0.5 * operator_norm(o) - 1e-8);
    CHECK(w * w <= 0.5 * operator_norm(o.adjoint() * o + o * o.adjoint()) + 1e-8);
  }
}
