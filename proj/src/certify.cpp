#include "mubcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mubcert/error.hpp"
#include "mubcert/qrac.hpp"

namespace mubcert {

namespace {

constexpr double kAspSlack = 1e-12;
constexpr double kDistNegTol = 1e-12;
constexpr double kDistSumTol = 1e-8;
constexpr double kDenominatorFloor = 1e-12;
const double kAlpha = 2.0 - std::numbers::sqrt2;

void require_dim(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDim, "dimension must be >= 2, got " + std::to_string(d));
}

std::string describe(double p_bar, int d) {
  std::ostringstream s;
  s.precision(17);
  s << "p_bar = " << p_bar << " (d = " << d << ")";
  return s.str();
}

/// Distance below p_Q, clamped at zero. Throws OutOfRange above p_Q + 1e-12.
double gap_to_ideal(double p_bar, int d) {
  const double p_q = ideal_asp(d);
  if (!(p_bar <= p_q + kAspSlack)) throw Error(ErrorCode::OutOfRange, describe(p_bar, d) + " exceeds p_Q");
  return std::max(0.0, p_q - p_bar);
}

/// 2p − 1, computed as 1/√d − 2(p_Q − p) so that p = p_Q maps to exactly 1/√d.
double bias_from_gap(double gap, int d) { return 1.0 / std::sqrt(static_cast<double>(d)) - 2.0 * gap; }

/// (2p_0 − 1) = √((d² − 1)d)/d².
double threshold_bias(int d) {
  const double dd = d;
  return std::sqrt((dd * dd - 1.0) * dd) / (dd * dd);
}

void require_norm_region(double p_bar, int d) {
  if (p_bar < thresholds(d).p_0) {
    throw Error(ErrorCode::NontrivialRegionRequired, describe(p_bar, d) + " below p_0");
  }
}

/// √(d³(2p − 1)² − (d² − 1)) in factored form around the root at p_0; clamped at 0.
double norm_radical(double p_bar, int d) {
  const double dd = d;
  const double bias = 2.0 * p_bar - 1.0;
  const double root = threshold_bias(d);
  const double radicand = dd * dd * dd * (bias - root) * (bias + root);
  return std::sqrt(std::max(0.0, radicand));
}

std::optional<double> incompat_raw(double p_bar, int d) {
  const double dd = d;
  const double q = norm_sum_lower_bound(p_bar, d);
  const double s_max = s_range(p_bar, d).s_max;
  const double numerator = 0.5 * dd * dd * (1.0 + s_max) - q * q / dd;
  const double denominator = q * q - trace_square_upper_bound(q, d);
  if (denominator <= kDenominatorFloor) return std::nullopt;
  return numerator / denominator;
}

void check_distribution(std::span<const double> dist) {
  if (dist.empty()) throw Error(ErrorCode::NotADistribution, "empty distribution");
  double total = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < -kDistNegTol) {
      std::ostringstream msg;
      msg << "entry " << p << " is negative or non-finite";
      throw Error(ErrorCode::NotADistribution, msg.str());
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kDistSumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << total;
    throw Error(ErrorCode::NotADistribution, msg.str());
  }
}

ConsistencyCheck make_check(std::string name, double slack) {
  return {std::move(name), slack, slack >= -kConsistencyTol};
}

}  // namespace

double ideal_asp(int d) {
  require_dim(d);
  return 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(d)));
}

Thresholds thresholds(int d) {
  require_dim(d);
  const double dd = d;
  return {0.5 + 0.5 * threshold_bias(d), 0.5 + 1.0 / (2.0 * dd * std::sqrt(dd))};
}

double renyi_half_entropy(std::span<const double> dist) {
  check_distribution(dist);
  double root_sum = 0.0;
  for (double p : dist) root_sum += std::sqrt(std::max(0.0, p));
  return 2.0 * std::log2(root_sum);
}

double shannon_entropy(std::span<const double> dist) {
  check_distribution(dist);
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

double outcome_entropy(const Povm& povm, const ComplexMatrix& rho) {
  if (rho.rows() != povm.dim() || rho.cols() != povm.dim()) throw Error(ErrorCode::DimMismatch, "state dimension");
  std::vector<double> probs;
  probs.reserve(povm.outcomes());
  for (const ComplexMatrix& op : povm.operators()) probs.push_back((op * rho).trace().real());
  return shannon_entropy(probs);
}

double overlap_entropy(const MeasurementPair& pair) {
  const RealMatrix t = overlap_data(pair).t / static_cast<double>(pair.dim());
  return renyi_half_entropy(std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
}

double overlap_entropy_lower_bound(double p_bar, int d) {
  require_dim(d);
  if (!(p_bar > 0.5)) throw Error(ErrorCode::OutOfRange, describe(p_bar, d) + " must exceed 1/2");
  const double bias = bias_from_gap(gap_to_ideal(p_bar, d), d);
  const double dd = d;
  return std::max(0.0, 2.0 * std::log2(dd * std::sqrt(dd) * bias));
}

SRange s_range(double p_bar, int d) {
  require_dim(d);
  if (!(p_bar >= 0.5)) throw Error(ErrorCode::OutOfRange, describe(p_bar, d) + " below 1/2");
  const double gap = gap_to_ideal(p_bar, d);
  const double dd = d;
  const double root_d = std::sqrt(dd);
  const double bias = bias_from_gap(gap, d);
  // 1 − d(2p − 1)² rewritten as 4·gap·(√d − d·gap), exact zero at p_Q
  const double deficit = std::max(0.0, 4.0 * gap * (root_d - dd * gap));
  const double spread = std::sqrt(dd * (dd * dd - 1.0) * deficit) / dd;
  return {std::clamp(bias - spread, 0.0, 1.0), std::clamp(bias + spread, 0.0, 1.0)};
}

double norm_sum_lower_bound(double p_bar, int d) {
  require_dim(d);
  gap_to_ideal(p_bar, d);
  require_norm_region(p_bar, d);
  const double dd = d;
  const double p = std::min(p_bar, ideal_asp(d));
  return std::min(dd, dd - (2.0 + std::numbers::sqrt2) / dd * (1.0 - norm_radical(p, d)));
}

double incompatibility_bound_direct(const MeasurementPair& pair) {
  const double dd = pair.dim();
  double max_norm = 0.0;
  for (const ComplexMatrix& a : pair.a.operators()) {
    for (const ComplexMatrix& b : pair.b.operators()) max_norm = std::max(max_norm, operator_norm(a + b));
  }
  auto trace_sums = [](const Povm& povm) {
    double squared_traces = 0.0;
    double trace_of_squares = 0.0;
    for (const ComplexMatrix& op : povm.operators()) {
      const double tr = op.trace().real();
      squared_traces += tr * tr;
      trace_of_squares += (op * op).trace().real();
    }
    return std::pair{squared_traces, trace_of_squares};
  };
  const auto [sq_a, tsq_a] = trace_sums(pair.a);
  const auto [sq_b, tsq_b] = trace_sums(pair.b);
  const double numerator = dd * dd * max_norm - sq_a - sq_b;
  const double denominator = dd * tsq_a + dd * tsq_b - sq_a - sq_b;
  if (denominator <= kDenominatorFloor) {
    std::ostringstream msg;
    msg << "denominator " << denominator << " (both measurements trivial?)";
    throw Error(ErrorCode::DegenerateDenominator, msg.str());
  }
  return std::min(1.0, numerator / denominator);
}

double incompatibility_bound_from_asp(double p_bar, int d) {
  require_dim(d);
  gap_to_ideal(p_bar, d);
  require_norm_region(p_bar, d);
  const std::optional<double> raw = incompat_raw(p_bar, d);
  if (!raw) throw Error(ErrorCode::DegenerateDenominator, describe(p_bar, d) + ": denominator not positive");
  return std::min(1.0, *raw);
}

double incompatibility_nontrivial_threshold(int d) {
  const double p_q = ideal_asp(d);
  auto trivial = [d](double p) {
    const std::optional<double> raw = incompat_raw(p, d);
    return !raw || *raw >= 1.0;
  };
  double lo = thresholds(d).p_0;
  double hi = p_q;
  if (!trivial(lo)) return lo;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (trivial(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double trace_square_upper_bound(double q, int d) {
  require_dim(d);
  const double dd = d;
  if (!(q >= 0.0 && q <= dd)) {
    std::ostringstream msg;
    msg << "q = " << q << " outside [0, " << d << "]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return dd + (dd - q) * (dd - q + 1.0);
}

UncertaintyDirect uncertainty_bound_direct(const MeasurementPair& pair, const std::optional<ComplexMatrix>& rho) {
  const double max_overlap = overlap_data(pair).s.maxCoeff();
  UncertaintyDirect out;
  out.bound = std::max(0.0, -std::log2(max_overlap * max_overlap));
  if (rho) {
    out.entropy_sum = outcome_entropy(pair.a, *rho) + outcome_entropy(pair.b, *rho);
    out.holds = *out.entropy_sum >= out.bound - 1e-9;
  }
  return out;
}

double uncertainty_bound_from_asp(double p_bar, int d) {
  const double s_max = s_range(p_bar, d).s_max;
  return std::max(0.0, -2.0 * std::log2(s_max));
}

AspBounds asp_bounds(double p_bar, int d) {
  require_dim(d);
  gap_to_ideal(p_bar, d);
  const Thresholds th = thresholds(d);
  AspBounds out;
  out.d = d;
  out.p_bar = p_bar;
  out.p_q = ideal_asp(d);
  out.p_0 = th.p_0;
  out.entropy_threshold = th.entropy_threshold;
  if (p_bar < 0.5) return out;

  const SRange range = s_range(p_bar, d);
  out.s_min = range.s_min;
  out.s_max = range.s_max;
  out.uncertainty_lower = uncertainty_bound_from_asp(p_bar, d);
  if (p_bar > 0.5) out.h_s_lower = overlap_entropy_lower_bound(p_bar, d);
  if (p_bar >= th.p_0) {
    out.norm_sum_lower = norm_sum_lower_bound(p_bar, d);
    if (const std::optional<double> raw = incompat_raw(p_bar, d)) out.incompat_upper = std::min(1.0, *raw);
  }
  return out;
}

CertificationReport certification_report(const MeasurementPair& pair) {
  require_qrac_pair(pair);
  const int d = pair.dim();
  CertificationReport report;
  report.dim = d;
  report.p_bar = optimal_asp(pair);
  report.asp_bounds = asp_bounds(report.p_bar, d);
  report.degeneracy_flags = optimal_states(pair).degenerate;

  DirectQuantities& direct = report.direct;
  direct.overlap_data = overlap_data(pair);
  const RealMatrix normalized = direct.overlap_data.t / static_cast<double>(d);
  direct.overlap_entropy =
      renyi_half_entropy(std::span<const double>(normalized.data(), static_cast<std::size_t>(normalized.size())));
  direct.norm_sum_a = povm_stats(pair.a).norm_sum;
  direct.norm_sum_b = povm_stats(pair.b).norm_sum;
  try {
    direct.incompat_upper_direct = incompatibility_bound_direct(pair);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateDenominator) throw;
  }
  const double max_s = direct.overlap_data.s.maxCoeff();
  direct.uncertainty_lower_direct = std::max(0.0, -std::log2(max_s * max_s));
  direct.mub_flag = is_mub_pair(pair, 1e-9);

  const AspBounds& b = report.asp_bounds;
  report.checks.push_back(make_check("overlap_entropy", direct.overlap_entropy - b.h_s_lower));
  report.checks.push_back(make_check("s_min", direct.overlap_data.s.minCoeff() - b.s_min));
  report.checks.push_back(make_check("s_max", b.s_max - max_s));
  if (b.norm_sum_lower) {
    report.checks.push_back(make_check("norm_sum_a", direct.norm_sum_a - *b.norm_sum_lower));
    report.checks.push_back(make_check("norm_sum_b", direct.norm_sum_b - *b.norm_sum_lower));
  }
  report.checks.push_back(make_check("uncertainty", direct.uncertainty_lower_direct - b.uncertainty_lower));
  report.consistent =
      std::all_of(report.checks.begin(), report.checks.end(), [](const ConsistencyCheck& c) { return c.passed; });
  return report;
}

}  // namespace mubcert
