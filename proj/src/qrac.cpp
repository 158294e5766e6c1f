#include "mubcert/qrac.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mubcert/error.hpp"
#include "mubcert/parallel.hpp"

namespace mubcert {

namespace {

constexpr int kInnerIters = 50;
constexpr double kInnerChange = 1e-10;
constexpr double kDecreaseGuard = 1e-12;
constexpr double kRegularizer = 1e-12;
constexpr double kOuterImprovement = 1e-9;

double weighted_objective(const Povm& povm, const std::vector<ComplexMatrix>& weights) {
  double total = 0.0;
  for (int i = 0; i < povm.outcomes(); ++i) total += (weights[i] * povm[i]).trace().real();
  return total;
}

struct RestartOutcome {
  double best_asp = 0.0;
  std::optional<MeasurementPair> best_pair;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome run_restart(const SeesawOptions& options, int restart) {
  const int d = options.dim;
  MeasurementPair pair = options.warm_start
                             ? *options.warm_start
                             : MeasurementPair(random_povm(d, d, derive_seed(options.seed, 2 * restart)),
                                               random_povm(d, d, derive_seed(options.seed, 2 * restart + 1)));
  RestartOutcome out;
  double current = optimal_asp(pair);
  out.best_asp = current;
  out.best_pair = pair;

  for (int iter = 1; iter <= options.max_outer_iters; ++iter) {
    out.iterations = iter;
    const OptimalStates states = optimal_states(pair);

    std::vector<ComplexMatrix> weights_a(d, ComplexMatrix::Zero(d, d));
    std::vector<ComplexMatrix> weights_b(d, ComplexMatrix::Zero(d, d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const ComplexMatrix& rho = states.states[static_cast<std::size_t>(i * d + j)];
        weights_a[i] += rho;
        weights_b[j] += rho;
      }
    }
    Povm a = improve_measurement(pair.a, weights_a);
    pair = MeasurementPair(std::move(a), pair.b);
    Povm b = improve_measurement(pair.b, weights_b);
    pair = MeasurementPair(pair.a, std::move(b));

    const double next = optimal_asp(pair);
    if (next > out.best_asp) {
      out.best_asp = next;
      out.best_pair = pair;
    }
    const bool stalled = next - current < kOuterImprovement;
    current = next;
    if (stalled) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

QracConfiguration::QracConfiguration(MeasurementPair pair_in, std::vector<ComplexMatrix> states_in)
    : pair(std::move(pair_in)), states(std::move(states_in)) {
  require_qrac_pair(pair);
  const int d = pair.dim();
  if (states.size() != static_cast<std::size_t>(d * d)) {
    std::ostringstream msg;
    msg << "expected " << d * d << " states, got " << states.size();
    throw Error(ErrorCode::DimMismatch, msg.str());
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    const ComplexMatrix& rho = states[k];
    if (rho.rows() != d || rho.cols() != d) throw Error(ErrorCode::DimMismatch, "state has wrong dimension");
    const double lowest = hermitian_eigenvalues(rho)(0);
    if (lowest < -tol::psd_clamp) {
      std::ostringstream msg;
      msg << "state " << k << ": smallest eigenvalue " << lowest;
      throw Error(ErrorCode::NotPsd, msg.str());
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "state " << k << ": trace " << rho.trace().real();
      throw Error(ErrorCode::NotComplete, msg.str());
    }
  }
}

bool OptimalStates::any_degenerate() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool b) { return b; });
}

void require_qrac_pair(const MeasurementPair& pair) {
  const int d = pair.dim();
  if (d < 2) throw Error(ErrorCode::InvalidParams, "QRAC needs dimension >= 2");
  if (pair.a.outcomes() != d || pair.b.outcomes() != d) {
    std::ostringstream msg;
    msg << "QRAC needs " << d << " outcomes per measurement, got " << pair.a.outcomes() << " and "
        << pair.b.outcomes();
    throw Error(ErrorCode::InvalidParams, msg.str());
  }
}

double asp(const QracConfiguration& config) {
  const int d = config.dim();
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      total += (config.state(i, j) * (config.pair.a[i] + config.pair.b[j])).trace().real();
    }
  }
  return total / (2.0 * d * d);
}

OptimalStates optimal_states(const MeasurementPair& pair) {
  require_qrac_pair(pair);
  const int d = pair.dim();
  OptimalStates out;
  out.states.reserve(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const TopEigenpair top = top_eigenpair(pair.a[i] + pair.b[j]);
      out.states.push_back(projector(top.vector));
      out.degenerate.push_back(top.degenerate);
      out.top_eigenvalues.push_back(top.value);
    }
  }
  return out;
}

double optimal_asp(const MeasurementPair& pair) {
  require_qrac_pair(pair);
  const int d = pair.dim();
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) total += operator_norm(pair.a[i] + pair.b[j]);
  }
  return total / (2.0 * d * d);
}

Povm improve_measurement(const Povm& current, const std::vector<ComplexMatrix>& weights) {
  const int d = current.dim();
  const int outcomes = current.outcomes();
  std::vector<ComplexMatrix> ops(current.operators().begin(), current.operators().end());
  double objective = weighted_objective(current, weights);

  for (int step = 0; step < kInnerIters; ++step) {
    std::vector<ComplexMatrix> sandwiched(outcomes);
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < outcomes; ++i) {
      sandwiched[i] = weights[i] * ops[i] * weights[i];
      total += sandwiched[i];
    }
    total = 0.5 * (total + total.adjoint());
    if (hermitian_eigenvalues(total)(0) < kRegularizer) total += kRegularizer * ComplexMatrix::Identity(d, d);
    const ComplexMatrix inv_root = inverse_sqrt(total);

    std::vector<ComplexMatrix> next(outcomes);
    double change = 0.0;
    double next_objective = 0.0;
    ComplexMatrix completeness = -ComplexMatrix::Identity(d, d);
    for (int i = 0; i < outcomes; ++i) {
      const ComplexMatrix raw = inv_root * sandwiched[i] * inv_root;
      next[i] = 0.5 * (raw + raw.adjoint());
      completeness += next[i];
      change += (next[i] - ops[i]).norm();
      next_objective += (weights[i] * next[i]).trace().real();
    }
    if (completeness.norm() > 1e-10) break;
    if (next_objective < objective - kDecreaseGuard) break;
    ops = std::move(next);
    objective = next_objective;
    if (change < kInnerChange) break;
  }
  return validate_povm(std::move(ops));
}

SeesawResult seesaw_optimize(const SeesawOptions& options) {
  if (options.dim < 2 || options.restarts < 1 || options.max_outer_iters < 1) {
    std::ostringstream msg;
    msg << "need dim >= 2, restarts >= 1, max_outer_iters >= 1 (got " << options.dim << ", " << options.restarts
        << ", " << options.max_outer_iters << ")";
    throw Error(ErrorCode::InvalidParams, msg.str());
  }
  if (options.warm_start) {
    if (options.warm_start->dim() != options.dim) throw Error(ErrorCode::InvalidParams, "warm start dimension differs");
    require_qrac_pair(*options.warm_start);
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) { outcomes[r] = run_restart(options, static_cast<int>(r)); });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].best_asp > outcomes[best].best_asp) best = r;
  }
  const MeasurementPair& best_pair = *outcomes[best].best_pair;
  SeesawResult result{0.0, QracConfiguration(best_pair, optimal_states(best_pair).states), options.restarts,
                      {}, {}, true};
  for (const RestartOutcome& o : outcomes) {
    result.iterations_per_restart.push_back(o.iterations);
    result.restart_best_asp.push_back(o.best_asp);
    result.converged = result.converged && o.converged;
  }
  result.best_asp = asp(result.best_configuration);
  return result;
}

}  // namespace mubcert
