#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dkr/kernel.hpp"

namespace dkr {

/// Clips `value` to [-limit, limit]. Idempotent and order-preserving.
/// Throws ArgumentError unless limit is finite and > 0.
double truncate(double value, double limit);

/// A function f(x) = sum_i coefficients[i] * k(centers_i, x): the span form
/// every local minimizer takes, with the fitted sample's covariates as
/// centers. Immutable after construction; evaluation is pure and linear in
/// the coefficients.
struct KernelExpansion {
  Eigen::MatrixXd centers;       // one center per row
  Eigen::VectorXd coefficients;  // same length as centers.rows()
  KernelSpec kernel;

  void validate() const;

  /// f(x). Throws ArgumentError if x does not match the centers' dimension.
  double evaluate(Eigen::Ref<const Eigen::VectorXd> x) const;

  /// f over each row of xs.
  Eigen::VectorXd evaluate(Eigen::Ref<const Eigen::MatrixXd> xs) const;

  /// truncate(f(x), limit).
  double evaluate_truncated(Eigen::Ref<const Eigen::VectorXd> x, double limit) const;

  /// Squared norm of f in the kernel's function space: aᵀ G a with G the
  /// Gram matrix over the centers. Clamped to 0 when roundoff pushes the
  /// quadratic form slightly below zero (tolerated down to -1e-10).
  double rkhs_norm_sq() const;
};

/// The combined predictor: m truncated local expansions averaged with equal
/// weight. Locals are kept sorted by segment index and summed sequentially in
/// that order, so predictions do not depend on the order locals arrived in.
/// Predictions always lie in [-truncation, truncation].
class AveragedEstimator {
 public:
  /// `locals` are taken to be in canonical (segment) order already.
  AveragedEstimator(std::vector<KernelExpansion> locals, double truncation);

  /// Sorts by the attached segment index, then stores in that order.
  /// Duplicate indices are rejected.
  static AveragedEstimator from_indexed(std::vector<std::pair<int, KernelExpansion>> locals,
                                        double truncation);

  double predict(Eigen::Ref<const Eigen::VectorXd> x) const;
  Eigen::VectorXd predict(Eigen::Ref<const Eigen::MatrixXd> xs) const;

  const std::vector<KernelExpansion>& locals() const { return locals_; }
  double truncation() const { return truncation_; }
  int num_locals() const { return static_cast<int>(locals_.size()); }

 private:
  std::vector<KernelExpansion> locals_;
  double truncation_;
};

/// Versioned JSON serialization ("dkr-model" format, version 1): kernel
/// family and bandwidth, truncation level, then per-local centers and
/// coefficients as plain decimal arrays. Identical models serialize to
/// identical bytes.
std::string model_to_json(const AveragedEstimator& estimator);
AveragedEstimator model_from_json(const std::string& text);

/// File variants; throw DataError on unreadable/unwritable paths or on a
/// document with the wrong format tag or version.
void save_model(const AveragedEstimator& estimator, const std::string& path);
AveragedEstimator load_model(const std::string& path);

}  // namespace dkr
