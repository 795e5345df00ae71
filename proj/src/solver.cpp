#include "dkr/solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <sstream>

#include "dkr/errors.hpp"

namespace dkr {

std::string to_string(PenaltyFamily family) {
  switch (family) {
    case PenaltyFamily::RkhsNormSq:
      return "rkhs_norm_sq";
    case PenaltyFamily::CoefficientL1:
      return "coefficient_l1";
  }
  return "unknown";
}

namespace {

constexpr int kStallWindow = 100;

void check_shapes(Eigen::Ref<const Eigen::MatrixXd> gram, Eigen::Ref<const Eigen::VectorXd> labels,
                  double lambda, const char* what) {
  if (gram.rows() != gram.cols()) {
    std::ostringstream msg;
    msg << what << ": Gram matrix must be square, got " << gram.rows() << "x" << gram.cols();
    throw ArgumentError(msg.str());
  }
  if (gram.rows() == 0) throw ArgumentError(std::string(what) + ": empty Gram matrix");
  if (labels.size() != gram.rows()) {
    std::ostringstream msg;
    msg << what << ": " << labels.size() << " labels for a " << gram.rows() << "-point Gram matrix";
    throw ArgumentError(msg.str());
  }
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    std::ostringstream msg;
    msg << what << ": lambda must be a nonnegative finite real, got " << lambda;
    throw ArgumentError(msg.str());
  }
}

double default_jitter(Eigen::Ref<const Eigen::MatrixXd> gram) {
  return 1e-10 * gram.trace() / static_cast<double>(gram.rows());
}

double risk_from_predictions(const LossSpec& loss, const Eigen::VectorXd& predictions,
                             Eigen::Ref<const Eigen::VectorXd> labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    total += loss_value(loss, predictions[i], labels[i]);
  }
  return total / static_cast<double>(predictions.size());
}

double penalty_from_state(const PenaltySpec& penalty, const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& predictions) {
  if (penalty.family == PenaltyFamily::CoefficientL1) return alpha.lpNorm<1>();
  // predictions = G * alpha, so the quadratic form is alpha . predictions.
  return std::max(0.0, alpha.dot(predictions));
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& values, double threshold) {
  Eigen::VectorXd out(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > threshold) {
      out[i] = values[i] - threshold;
    } else if (values[i] < -threshold) {
      out[i] = values[i] + threshold;
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

}  // namespace

double penalty_value(const PenaltySpec& penalty, Eigen::Ref<const Eigen::MatrixXd> gram,
                     Eigen::Ref<const Eigen::VectorXd> alpha) {
  if (penalty.family == PenaltyFamily::CoefficientL1) return alpha.lpNorm<1>();
  if (gram.rows() != alpha.size()) {
    throw ArgumentError("penalty_value: Gram size does not match coefficient length");
  }
  return std::max(0.0, alpha.dot(gram * alpha));
}

double objective(const LossSpec& loss, const PenaltySpec& penalty,
                 Eigen::Ref<const Eigen::MatrixXd> gram, Eigen::Ref<const Eigen::VectorXd> labels,
                 double lambda, Eigen::Ref<const Eigen::VectorXd> alpha) {
  check_shapes(gram, labels, lambda, "objective");
  if (alpha.size() != gram.rows()) {
    throw ArgumentError("objective: coefficient length does not match Gram size");
  }
  const Eigen::VectorXd predictions = gram * alpha;
  return risk_from_predictions(loss, predictions, labels) +
         lambda * penalty_from_state(penalty, alpha, predictions);
}

Eigen::VectorXd solve_kernel_ridge(Eigen::Ref<const Eigen::MatrixXd> gram,
                                   Eigen::Ref<const Eigen::VectorXd> labels, double lambda,
                                   const SolverOptions& options) {
  check_shapes(gram, labels, lambda, "solve_kernel_ridge");
  const Eigen::Index n = gram.rows();
  const double ridge = static_cast<double>(n) * lambda;
  const double jitter = options.jitter < 0.0 ? default_jitter(gram) : options.jitter;

  Eigen::MatrixXd system = gram;
  system.diagonal().array() += ridge + jitter;

  Eigen::LDLT<Eigen::MatrixXd> factor(system);
  Eigen::VectorXd alpha;
  double residual = std::numeric_limits<double>::infinity();
  const double bound = 1e-6 * (1.0 + labels.lpNorm<Eigen::Infinity>());
  if (factor.info() == Eigen::Success) {
    alpha = factor.solve(labels);
    residual = (gram * alpha + ridge * alpha - labels).lpNorm<Eigen::Infinity>();
    if (residual <= bound && alpha.allFinite()) return alpha;
  }

  std::ostringstream msg;
  msg << "solve_kernel_ridge: system of size " << n << " with lambda=" << lambda
      << ", jitter=" << jitter << " is numerically singular (residual " << residual
      << " exceeds bound " << bound << ")";
  throw NumericError(msg.str());
}

SolveResult solve_generic(const LossSpec& loss, const PenaltySpec& penalty,
                          Eigen::Ref<const Eigen::MatrixXd> gram,
                          Eigen::Ref<const Eigen::VectorXd> labels, double lambda,
                          const SolverOptions& options) {
  check_shapes(gram, labels, lambda, "solve_generic");
  loss.validate();
  if (options.max_iterations < 1) throw ArgumentError("solve_generic: max_iterations must be >= 1");
  if (!(options.tolerance > 0.0)) throw ArgumentError("solve_generic: tolerance must be positive");

  const Eigen::Index n = gram.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  const bool l1 = penalty.family == PenaltyFamily::CoefficientL1;

  struct State {
    Eigen::VectorXd alpha;
    Eigen::VectorXd predictions;  // gram * alpha
    double objective;
  };

  auto make_state = [&](Eigen::VectorXd alpha) {
    State state;
    state.predictions = gram * alpha;
    state.objective = risk_from_predictions(loss, state.predictions, labels) +
                      lambda * penalty_from_state(penalty, alpha, state.predictions);
    state.alpha = std::move(alpha);
    return state;
  };

  // Risk subgradient (1/n) G s, with the smooth RkhsNormSq gradient 2*lambda*G*alpha
  // folded in. The L1 penalty is handled by the proximal step instead.
  auto step_direction = [&](const State& state) {
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      s[i] = loss_subgradient(loss, state.predictions[i], labels[i]);
    }
    Eigen::VectorXd direction = inv_n * (gram * s);
    if (!l1 && lambda > 0.0) direction += 2.0 * lambda * state.predictions;
    return direction;
  };

  auto take_step = [&](const State& state, const Eigen::VectorXd& direction, double step) {
    Eigen::VectorXd candidate = state.alpha - step * direction;
    if (l1 && lambda > 0.0) candidate = soft_threshold(candidate, step * lambda);
    return make_state(std::move(candidate));
  };

  State current = make_state(Eigen::VectorXd::Zero(n));
  SolveResult result;
  result.coefficients = current.alpha;
  result.objective = current.objective;
  if (options.record_trace) result.best_objective_trace.push_back(current.objective);

  // Backtracking at t = 0: grow the trial step while it keeps improving over
  // the best candidate, shrink while it fails to improve on the start.
  Eigen::VectorXd direction0 = step_direction(current);
  double a = 1.0;
  {
    State candidate = take_step(current, direction0, a);
    if (candidate.objective < current.objective) {
      while (a < 0x1p30) {
        State wider = take_step(current, direction0, 2.0 * a);
        if (!(wider.objective < candidate.objective)) break;
        a *= 2.0;
        candidate = std::move(wider);
      }
    } else {
      bool improved = false;
      while (a > 0x1p-52) {
        a *= 0.5;
        candidate = take_step(current, direction0, a);
        if (candidate.objective < current.objective) {
          improved = true;
          break;
        }
      }
      if (!improved) {
        // No descent in the subgradient direction at any step size: the
        // start is already (numerically) stationary.
        result.converged = true;
        return result;
      }
    }
  }

  double best_objective = current.objective;
  int stall = 0;
  for (int t = 0; t < options.max_iterations; ++t) {
    const double step = a / (1.0 + std::sqrt(static_cast<double>(t)));
    const Eigen::VectorXd direction = t == 0 ? direction0 : step_direction(current);
    current = take_step(current, direction, step);
    result.iterations = t + 1;

    if (!std::isfinite(current.objective)) {
      std::ostringstream msg;
      msg << "solve_generic: objective became non-finite at iteration " << t
          << " (loss=" << to_string(loss.family) << ", penalty=" << to_string(penalty.family)
          << ", lambda=" << lambda << ", n=" << n << ")";
      throw NumericError(msg.str());
    }

    if (current.objective < best_objective) {
      const double improvement = best_objective - current.objective;
      if (improvement > options.tolerance * std::max(1.0, std::abs(current.objective))) {
        stall = 0;
      } else {
        ++stall;
      }
      best_objective = current.objective;
      result.coefficients = current.alpha;
      result.objective = current.objective;
    } else {
      ++stall;
    }
    if (options.record_trace) result.best_objective_trace.push_back(best_objective);

    if (stall >= kStallWindow) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace dkr
