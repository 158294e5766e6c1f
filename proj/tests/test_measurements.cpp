#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mubcert/error.hpp"
#include "mubcert/measurements.hpp"
#include "mubcert/parallel.hpp"
#include "mubcert/qrac.hpp"

using namespace mubcert;

namespace {

ComplexMatrix basis_projector(int d, int k) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(k, k) = 1.0;
  return p;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("validate_povm accepts valid measurements") {
  CHECK(validate_povm({basis_projector(2, 0), basis_projector(2, 1)}).outcomes() == 2);
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  CHECK(validate_povm({half, half}).dim() == 2);
}

TEST_CASE("validate_povm rejects invalid measurements") {
  CHECK(code_of([] { validate_povm({basis_projector(2, 0), basis_projector(2, 0)}); }) == ErrorCode::NotComplete);

  ComplexMatrix skew = basis_projector(2, 0);
  skew(0, 1) = 0.3;
  CHECK(code_of([&] { validate_povm({skew, basis_projector(2, 1)}); }) == ErrorCode::NotHermitian);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  ComplexMatrix rest = ComplexMatrix::Identity(2, 2) - neg;
  CHECK(code_of([&] { validate_povm({neg, rest}); }) == ErrorCode::NotPsd);

  CHECK(code_of([] { validate_povm({basis_projector(2, 0), basis_projector(3, 1)}); }) == ErrorCode::DimMismatch);
  CHECK(code_of([] { validate_povm({}); }) == ErrorCode::DimMismatch);
}

TEST_CASE("MeasurementPair requires equal dimensions") {
  const Povm a = validate_povm({ComplexMatrix::Identity(2, 2)});
  const Povm b = validate_povm({ComplexMatrix::Identity(3, 3)});
  CHECK(code_of([&] { MeasurementPair(a, b); }) == ErrorCode::DimMismatch);
}

TEST_CASE("fourier_mub_pair overlaps are uniform") {
  const MeasurementPair p2 = fourier_mub_pair(2);
  // B_0 = |+><+|
  CHECK(std::abs(p2.b[0](0, 1) - Complex(0.5, 0.0)) < 1e-15);
  for (int d : {2, 3}) {
    const OverlapData data = overlap_data(fourier_mub_pair(d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) CHECK(std::abs(data.t(i, j) - 1.0 / d) <= 1e-12);
    }
  }
  CHECK(is_mub_pair(fourier_mub_pair(4), 1e-9));
  CHECK(code_of([] { fourier_mub_pair(1); }) == ErrorCode::InvalidDim);
}

TEST_CASE("fourier_mub_pair is a MUB pair for d = 2..16") {
  for (int d = 2; d <= 16; ++d) CHECK(is_mub_pair(fourier_mub_pair(d), 1e-9));
}

TEST_CASE("is_mub_pair rejects trivial and noisy pairs") {
  CHECK(is_mub_pair(fourier_mub_pair(5), 1e-9));
  CHECK_FALSE(is_mub_pair(trivial_pair(3, 3), 1e-9));
  const MeasurementPair noisy = depolarize(fourier_mub_pair(4), 0.9);
  CHECK(std::abs(noisy.a[0].trace().real() - 1.0) < 1e-12);
  CHECK((noisy.a[0] * noisy.a[0] - noisy.a[0]).norm() > 1e-3);
  CHECK_FALSE(is_mub_pair(noisy, 1e-9));
}

TEST_CASE("depolarize examples") {
  const MeasurementPair f = fourier_mub_pair(4);
  const Povm same = depolarize(f.b, 1.0);
  for (int i = 0; i < 4; ++i) CHECK((same[i] - f.b[i]).norm() < 1e-15);

  const Povm flat = depolarize(f.b, 0.0);
  for (int i = 0; i < 4; ++i) CHECK((flat[i] - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);

  // ||A_i^eta + B_j^eta|| = eta ||A_i + B_j|| + 2(1 - eta)/d, so p(eta) = eta p_Q + (1 - eta)/d
  CHECK(std::abs(optimal_asp(depolarize(f, 0.9)) - 0.7) <= 1e-12);

  CHECK(code_of([&] { depolarize(f.a, 1.5); }) == ErrorCode::EtaOutOfRange);
  CHECK(code_of([&] { depolarize(f.a, -0.1); }) == ErrorCode::EtaOutOfRange);
}

TEST_CASE("depolarize composes multiplicatively") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Povm p = random_povm(3, 4, seed);
    const double e1 = 0.05 * static_cast<double>(seed % 20);
    const double e2 = 1.0 - 0.03 * static_cast<double>(seed);
    const Povm twice = depolarize(depolarize(p, e1), e2);
    const Povm once = depolarize(p, e1 * e2);
    for (int i = 0; i < p.outcomes(); ++i) CHECK((twice[i] - once[i]).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("overlap_data examples") {
  for (int d = 2; d <= 6; ++d) {
    const OverlapData data = overlap_data(fourier_mub_pair(d));
    CHECK((data.t.array() - 1.0 / d).abs().maxCoeff() <= 1e-12);
    CHECK((data.s.array() - 1.0 / std::sqrt(d)).abs().maxCoeff() <= 1e-12);
    CHECK(data.n.cwiseAbs().maxCoeff() <= 1e-12);
  }
  const OverlapData trivial = overlap_data(trivial_pair(2, 2));
  CHECK((trivial.t.array() - 0.5).abs().maxCoeff() <= 1e-12);
  CHECK((trivial.s.array() - 0.5).abs().maxCoeff() <= 1e-12);
  CHECK((trivial.n.array() - 0.5).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("overlap_data invariants on random pairs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const int outcomes = 1 + static_cast<int>(seed % 5);
    const MeasurementPair pair(random_povm(d, outcomes, derive_seed(seed, 0)),
                               random_povm(d, outcomes + 1, derive_seed(seed, 1)));
    const OverlapData data = overlap_data(pair);
    CHECK(std::abs(data.t.sum() - d) <= 1e-8);
    CHECK(data.t.minCoeff() >= -1e-10);
    CHECK(data.s.minCoeff() >= -1e-10);
    CHECK(data.s.maxCoeff() <= 1.0 + 1e-10);
    CHECK(data.n.minCoeff() >= -1e-10);
    CHECK(data.n.maxCoeff() <= 1.0 + 1e-10);
    for (int i = 0; i < data.t.rows(); ++i) {
      for (int j = 0; j < data.t.cols(); ++j) CHECK(data.s(i, j) <= std::sqrt(std::max(0.0, data.t(i, j))) + 1e-8);
    }
  }
}

TEST_CASE("povm_stats examples") {
  for (int d = 2; d <= 5; ++d) {
    const PovmStats projective = povm_stats(fourier_mub_pair(d).b);
    CHECK(projective.norm_sum == doctest::Approx(d).epsilon(1e-12));
    CHECK(projective.rank1_projective);

    const PovmStats flat = povm_stats(trivial_pair(d, d).a);
    CHECK(flat.norm_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(flat.rank1_projective);

    const double eta = 0.37;
    const PovmStats noisy = povm_stats(depolarize(fourier_mub_pair(d).a, eta));
    CHECK(noisy.norm_sum == doctest::Approx(eta * d + 1.0 - eta).epsilon(1e-12));
  }
}

TEST_CASE("norm_sum is at most min(d, outcomes) with equality only for rank-1 projective") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const int outcomes = 1 + static_cast<int>(seed % 6);
    const PovmStats stats = povm_stats(random_povm(d, outcomes, seed));
    CHECK(stats.norm_sum <= std::min(d, outcomes) + 1e-9);
    if (outcomes == d) CHECK(stats.norm_sum < d - 1e-6);
  }
}

TEST_CASE("random_povm examples") {
  const Povm single = random_povm(3, 1, 5);
  CHECK((single[0] - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

  const Povm a = random_povm(4, 3, 42);
  const Povm b = random_povm(4, 3, 42);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);

  int valid = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Povm p = random_povm(3, 3, seed);
    std::vector<ComplexMatrix> ops(p.operators().begin(), p.operators().end());
    validate_povm(ops);
    ++valid;
  }
  CHECK(valid == 1000);
}

TEST_CASE("unitary conjugation preserves validity") {
  const ComplexMatrix u = random_unitary(4, 3);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
  CHECK(is_mub_pair(MeasurementPair(conjugate(fourier_mub_pair(4).a, u), conjugate(fourier_mub_pair(4).b, u)), 1e-9));
}
