#include "mubcert/measurements.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mubcert/error.hpp"

namespace mubcert {

namespace {

constexpr double kCompletenessTol = 1e-9;

std::string op_label(std::size_t i) {
  std::ostringstream s;
  s << "operator " << i;
  return s.str();
}

// Standard complex Gaussian: real and imaginary parts each N(0, 1/2).
ComplexMatrix draw_ginibre(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

Povm validate_povm(std::vector<ComplexMatrix> candidate) {
  if (candidate.empty()) throw Error(ErrorCode::DimMismatch, "POVM needs at least one operator");
  const Eigen::Index dim = candidate.front().rows();
  if (dim < 1) throw Error(ErrorCode::DimMismatch, "operators must have dimension >= 1");

  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const ComplexMatrix& op = candidate[i];
    if (op.rows() != dim || op.cols() != dim) {
      std::ostringstream msg;
      msg << op_label(i) << " is " << op.rows() << "x" << op.cols() << ", expected " << dim << "x" << dim;
      throw Error(ErrorCode::DimMismatch, msg.str());
    }
    if (!all_finite(op)) throw Error(ErrorCode::NotHermitian, op_label(i) + " has non-finite entries");
    if (!is_hermitian(op)) {
      std::ostringstream msg;
      msg << op_label(i) << ": ||A - A^dag||_F = " << hermiticity_defect(op);
      throw Error(ErrorCode::NotHermitian, msg.str());
    }
    const double lowest = hermitian_eigenvalues(op)(0);
    if (lowest < -tol::psd_clamp) {
      std::ostringstream msg;
      msg << op_label(i) << ": smallest eigenvalue " << lowest;
      throw Error(ErrorCode::NotPsd, msg.str());
    }
    total += op;
  }
  const double defect = (total - ComplexMatrix::Identity(dim, dim)).norm();
  if (defect > kCompletenessTol) {
    std::ostringstream msg;
    msg << "||sum - I||_F = " << defect;
    throw Error(ErrorCode::NotComplete, msg.str());
  }
  return Povm(static_cast<int>(dim), std::move(candidate));
}

MeasurementPair::MeasurementPair(Povm a_in, Povm b_in) : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "pair dimensions differ: " << a.dim() << " vs " << b.dim();
    throw Error(ErrorCode::DimMismatch, msg.str());
  }
}

Povm basis_povm(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(unitary.cols());
  for (Eigen::Index k = 0; k < unitary.cols(); ++k) ops.push_back(projector(unitary.col(k)));
  return validate_povm(std::move(ops));
}

MeasurementPair fourier_mub_pair(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDim, "MUB pair needs d >= 2, got " + std::to_string(d));
  ComplexMatrix fourier(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      fourier(k, j) = std::polar(scale, angle);
    }
  }
  return {basis_povm(ComplexMatrix::Identity(d, d)), basis_povm(fourier)};
}

MeasurementPair trivial_pair(int d, int outcomes) {
  if (d < 1 || outcomes < 1) throw Error(ErrorCode::InvalidDim, "trivial pair needs d, outcomes >= 1");
  std::vector<ComplexMatrix> ops(outcomes, ComplexMatrix::Identity(d, d) / static_cast<double>(outcomes));
  Povm p = validate_povm(ops);
  return {p, p};
}

bool is_rank1_projective(const Povm& povm, double tol) {
  for (const ComplexMatrix& op : povm.operators()) {
    if ((op * op - op).norm() > tol) return false;
    if (std::abs(op.trace().real() - 1.0) > tol) return false;
  }
  return true;
}

bool is_mub_pair(const MeasurementPair& pair, double tol) {
  if (!is_rank1_projective(pair.a, tol) || !is_rank1_projective(pair.b, tol)) return false;
  const double uniform = 1.0 / pair.dim();
  for (const ComplexMatrix& a : pair.a.operators()) {
    for (const ComplexMatrix& b : pair.b.operators()) {
      if (std::abs((a * b).trace().real() - uniform) > tol) return false;
    }
  }
  return true;
}

Povm depolarize(const Povm& povm, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "eta = " << eta << " outside [0, 1]";
    throw Error(ErrorCode::EtaOutOfRange, msg.str());
  }
  const int d = povm.dim();
  const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> ops;
  ops.reserve(povm.outcomes());
  for (const ComplexMatrix& op : povm.operators()) {
    ops.push_back(eta * op + (1.0 - eta) * op.trace().real() / d * identity);
  }
  return validate_povm(std::move(ops));
}

MeasurementPair depolarize(const MeasurementPair& pair, double eta) {
  return {depolarize(pair.a, eta), depolarize(pair.b, eta)};
}

Povm mix(const Povm& p, const Povm& q, double weight_q) {
  if (p.dim() != q.dim() || p.outcomes() != q.outcomes()) {
    throw Error(ErrorCode::DimMismatch, "mixing POVMs of different shape");
  }
  if (!(weight_q >= 0.0 && weight_q <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "mixing weight outside [0, 1]");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(p.outcomes());
  for (int i = 0; i < p.outcomes(); ++i) ops.push_back((1.0 - weight_q) * p[i] + weight_q * q[i]);
  return validate_povm(std::move(ops));
}

OverlapData overlap_data(const MeasurementPair& pair) {
  const int na = pair.a.outcomes();
  const int nb = pair.b.outcomes();
  std::vector<ComplexMatrix> root_a, root_b;
  std::vector<double> norm_a, norm_b;
  for (const ComplexMatrix& op : pair.a.operators()) {
    root_a.push_back(psd_sqrt(op));
    norm_a.push_back(operator_norm(op));
  }
  for (const ComplexMatrix& op : pair.b.operators()) {
    root_b.push_back(psd_sqrt(op));
    norm_b.push_back(operator_norm(op));
  }

  OverlapData out{RealMatrix(na, nb), RealMatrix(na, nb), RealMatrix(na, nb)};
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      out.t(i, j) = (pair.a[i] * pair.b[j]).trace().real();
      out.s(i, j) = operator_norm(root_a[i] * root_b[j]);
      out.n(i, j) = 1.0 - 0.5 * (norm_a[i] + norm_b[j]);
    }
  }
  return out;
}

PovmStats povm_stats(const Povm& povm) {
  PovmStats stats;
  for (const ComplexMatrix& op : povm.operators()) {
    stats.traces.push_back(op.trace().real());
    stats.norms.push_back(operator_norm(op));
    stats.norm_sum += stats.norms.back();
  }
  stats.rank1_projective = is_rank1_projective(povm, 1e-9);
  return stats;
}

ComplexMatrix random_ginibre(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_ginibre(rng, d);
}

ComplexMatrix random_psd(int d, std::uint64_t seed) {
  const ComplexMatrix m = random_ginibre(d, seed);
  return m * m.adjoint();
}

Povm random_povm(int d, int outcomes, std::uint64_t seed) {
  if (d < 1 || outcomes < 1) throw Error(ErrorCode::InvalidDim, "random_povm needs d, outcomes >= 1");
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> grams;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < outcomes; ++i) {
    const ComplexMatrix m = draw_ginibre(rng, d);
    grams.push_back(m * m.adjoint());
    total += grams.back();
  }
  ComplexMatrix inv_root;
  try {
    inv_root = inverse_sqrt(0.5 * (total + total.adjoint()), 1e-12);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateSample, "sum of Gram matrices is singular");
  }
  for (ComplexMatrix& g : grams) {
    const ComplexMatrix a = inv_root * g * inv_root;
    g = 0.5 * (a + a.adjoint());
  }
  return validate_povm(std::move(grams));
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  const ComplexMatrix z = random_ginibre(d, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

Povm conjugate(const Povm& povm, const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& op : povm.operators()) {
    const ComplexMatrix rotated = unitary * op * unitary.adjoint();
    ops.push_back(0.5 * (rotated + rotated.adjoint()));
  }
  return validate_povm(std::move(ops));
}

}  // namespace mubcert
