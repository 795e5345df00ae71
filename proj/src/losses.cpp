#include "dkr/losses.hpp"

#include <cmath>
#include <sstream>

#include "dkr/errors.hpp"

namespace dkr {

std::string to_string(LossFamily family) {
  switch (family) {
    case LossFamily::Quadratic:
      return "quadratic";
    case LossFamily::Absolute:
      return "absolute";
    case LossFamily::EpsilonInsensitive:
      return "epsilon_insensitive";
  }
  return "unknown";
}

void LossSpec::validate() const {
  if (!(std::isfinite(epsilon) && epsilon >= 0.0)) {
    std::ostringstream msg;
    msg << "loss epsilon must be a nonnegative finite real, got " << epsilon;
    throw ArgumentError(msg.str());
  }
}

double loss_value(const LossSpec& spec, double prediction, double label) {
  const double residual = prediction - label;
  switch (spec.family) {
    case LossFamily::Quadratic:
      return residual * residual;
    case LossFamily::Absolute:
      return std::abs(residual);
    case LossFamily::EpsilonInsensitive:
      return std::max(0.0, std::abs(residual) - spec.epsilon);
  }
  return 0.0;
}

double loss_subgradient(const LossSpec& spec, double prediction, double label) {
  const double residual = prediction - label;
  switch (spec.family) {
    case LossFamily::Quadratic:
      return 2.0 * residual;
    case LossFamily::Absolute:
      if (residual > 0.0) return 1.0;
      if (residual < 0.0) return -1.0;
      return 0.0;
    case LossFamily::EpsilonInsensitive:
      if (residual > spec.epsilon) return 1.0;
      if (residual < -spec.epsilon) return -1.0;
      return 0.0;
  }
  return 0.0;
}

double empirical_risk(const LossSpec& spec, Eigen::Ref<const Eigen::VectorXd> predictions,
                      Eigen::Ref<const Eigen::VectorXd> labels) {
  spec.validate();
  if (predictions.size() != labels.size()) {
    std::ostringstream msg;
    msg << "empirical_risk: length mismatch (" << predictions.size() << " predictions vs "
        << labels.size() << " labels)";
    throw ArgumentError(msg.str());
  }
  if (predictions.size() == 0) throw ArgumentError("empirical_risk: empty sample");

  double total = 0.0;
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    total += loss_value(spec, predictions[i], labels[i]);
  }
  return total / static_cast<double>(predictions.size());
}

}  // namespace dkr
