#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dkr/losses.hpp"

namespace dkr {

enum class PenaltyFamily { RkhsNormSq, CoefficientL1 };

std::string to_string(PenaltyFamily family);

/// Regularizer applied to a coefficient vector a over a Gram matrix G.
/// RkhsNormSq is the squared function-space norm aᵀ G a (exponent fixed at 2);
/// CoefficientL1 is the plain L1 norm of the coefficients, the standard
/// kernelized-lasso reading of L1 regularization.
struct PenaltySpec {
  PenaltyFamily family = PenaltyFamily::RkhsNormSq;

  static PenaltySpec rkhs_norm_sq() { return {PenaltyFamily::RkhsNormSq}; }
  static PenaltySpec coefficient_l1() { return {PenaltyFamily::CoefficientL1}; }
};

struct SolverOptions {
  int max_iterations = 5000;
  /// Relative decrease of the best objective below which the iteration is
  /// considered stalled (checked over a 100-iteration window).
  double tolerance = 1e-8;
  /// Diagonal regularization added when solving the ridge system. Negative
  /// means the default 1e-10 * trace(G)/n.
  double jitter = -1.0;
  /// Reserved for stochastic variants; current algorithms are deterministic
  /// and do not consume it.
  std::uint64_t seed = 0;
  /// When set, SolveResult::best_objective_trace records the best objective
  /// after every iteration.
  bool record_trace = false;
};

struct SolveResult {
  Eigen::VectorXd coefficients;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  std::vector<double> best_objective_trace;
};

double penalty_value(const PenaltySpec& penalty, Eigen::Ref<const Eigen::MatrixXd> gram,
                     Eigen::Ref<const Eigen::VectorXd> alpha);

/// Regularized empirical risk of the expansion with coefficients `alpha`:
/// mean loss of the in-sample predictions G·alpha plus lambda times the
/// penalty.
double objective(const LossSpec& loss, const PenaltySpec& penalty,
                 Eigen::Ref<const Eigen::MatrixXd> gram, Eigen::Ref<const Eigen::VectorXd> labels,
                 double lambda, Eigen::Ref<const Eigen::VectorXd> alpha);

/// Closed-form minimizer for the quadratic loss with the squared-norm
/// penalty: solves (G + n*lambda*I + jitter*I) a = y and verifies the
/// residual of (G + n*lambda*I) a = y is below 1e-6 * (1 + |y|_inf).
/// Throws NumericError with diagnostics when the system cannot be solved to
/// that accuracy even with the jitter.
Eigen::VectorXd solve_kernel_ridge(Eigen::Ref<const Eigen::MatrixXd> gram,
                                   Eigen::Ref<const Eigen::VectorXd> labels, double lambda,
                                   const SolverOptions& options);

/// Proximal subgradient descent for any supported loss/penalty pair:
/// subgradient step on the risk term, exact soft-threshold proximal step for
/// CoefficientL1, the smooth RkhsNormSq gradient folded into the step
/// direction. Starts from a = 0, uses the diminishing step a0/(1 + sqrt(t))
/// with a0 picked by a doubling/halving backtracking search at t = 0, and
/// returns the first iterate that achieved the best objective seen.
/// Deterministic for identical inputs. Hitting max_iterations is reported
/// through `converged = false`, not an error; a non-finite objective throws
/// NumericError.
SolveResult solve_generic(const LossSpec& loss, const PenaltySpec& penalty,
                          Eigen::Ref<const Eigen::MatrixXd> gram,
                          Eigen::Ref<const Eigen::VectorXd> labels, double lambda,
                          const SolverOptions& options);

}  // namespace dkr
