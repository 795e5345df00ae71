#pragma once

#include <Eigen/Core>
#include <string>

namespace dkr {

enum class KernelFamily { Gaussian };

std::string to_string(KernelFamily family);

/// Parameters of a positive semi-definite kernel. Only the Gaussian family
/// k(a, b) = exp(-|a - b|^2 / bandwidth^2) is provided; the enum leaves room
/// for additional families without breaking stored models.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double bandwidth = 1.0;

  /// Throws ArgumentError unless bandwidth is finite and > 0.
  void validate() const;
};

/// Evaluates k(a, b). For the Gaussian family the value lies in (0, 1] and
/// equals 1 exactly when a == b. Throws ArgumentError on dimension mismatch.
double kernel_eval(const KernelSpec& spec, Eigen::Ref<const Eigen::VectorXd> a,
                   Eigen::Ref<const Eigen::VectorXd> b);

/// Builds the n x n kernel matrix over `points` (one point per row). The
/// upper triangle is computed once and mirrored, so the result is symmetric
/// bit-for-bit; the Gaussian diagonal is exactly 1. Throws ArgumentError if
/// `points` has no rows. Never perturbs the diagonal; solvers add their own
/// jitter when they need it.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, Eigen::Ref<const Eigen::MatrixXd> points);

/// Kernel evaluations between two point sets, laid out queries x centers
/// (entry (q, c) = k(queries_q, centers_c)). Either side may be empty; the
/// result keeps the corresponding dimension at zero. Throws ArgumentError on
/// dimension mismatch.
Eigen::MatrixXd cross_gram(const KernelSpec& spec, Eigen::Ref<const Eigen::MatrixXd> centers,
                           Eigen::Ref<const Eigen::MatrixXd> queries);

}  // namespace dkr
