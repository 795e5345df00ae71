#pragma once

#include <Eigen/Core>
#include <string>

namespace dkr {

enum class LossFamily { Quadratic, Absolute, EpsilonInsensitive };

std::string to_string(LossFamily family);

/// A convex pointwise regression loss. `epsilon` is the half-width of the
/// zero-loss tube and is read only by the EpsilonInsensitive family.
struct LossSpec {
  LossFamily family = LossFamily::Quadratic;
  double epsilon = 0.1;

  static LossSpec quadratic() { return {LossFamily::Quadratic, 0.0}; }
  static LossSpec absolute() { return {LossFamily::Absolute, 0.0}; }
  static LossSpec epsilon_insensitive(double eps) { return {LossFamily::EpsilonInsensitive, eps}; }

  void validate() const;
};

/// Quadratic: (p - y)^2. Absolute: |p - y|. EpsilonInsensitive:
/// max(0, |p - y| - epsilon). All nonnegative and convex in the prediction.
double loss_value(const LossSpec& spec, double prediction, double label);

/// A subgradient of the loss with respect to the prediction. At
/// nondifferentiable points the canonical element 0 is returned, which keeps
/// iterations stationary at exact fits.
double loss_subgradient(const LossSpec& spec, double prediction, double label);

/// Mean of loss_value over the prediction/label pairs. Throws ArgumentError
/// on a length mismatch or empty input.
double empirical_risk(const LossSpec& spec, Eigen::Ref<const Eigen::VectorXd> predictions,
                      Eigen::Ref<const Eigen::VectorXd> labels);

}  // namespace dkr
