#include "dkr/kernel.hpp"

#include <cmath>
#include <sstream>

#include "dkr/errors.hpp"

namespace dkr {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian:
      return "gaussian";
  }
  return "unknown";
}

void KernelSpec::validate() const {
  if (!(std::isfinite(bandwidth) && bandwidth > 0.0)) {
    std::ostringstream msg;
    msg << "kernel bandwidth must be a positive finite real, got " << bandwidth;
    throw ArgumentError(msg.str());
  }
}

namespace {

double gaussian(double squared_distance, double bandwidth) {
  return std::exp(-squared_distance / (bandwidth * bandwidth));
}

void check_same_dimension(Eigen::Index da, Eigen::Index db, const char* what) {
  if (da != db) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << da << " vs " << db << ")";
    throw ArgumentError(msg.str());
  }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, Eigen::Ref<const Eigen::VectorXd> a,
                   Eigen::Ref<const Eigen::VectorXd> b) {
  spec.validate();
  check_same_dimension(a.size(), b.size(), "kernel_eval");
  if (a.size() < 1) throw ArgumentError("kernel_eval: points must have dimension >= 1");
  return gaussian((a - b).squaredNorm(), spec.bandwidth);
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, Eigen::Ref<const Eigen::MatrixXd> points) {
  spec.validate();
  const Eigen::Index n = points.rows();
  if (n == 0) throw ArgumentError("gram_matrix: point list must be nonempty");

  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = 1.0;  // Gaussian kernel at zero distance
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = gaussian((points.row(i) - points.row(j)).squaredNorm(), spec.bandwidth);
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  return gram;
}

Eigen::MatrixXd cross_gram(const KernelSpec& spec, Eigen::Ref<const Eigen::MatrixXd> centers,
                           Eigen::Ref<const Eigen::MatrixXd> queries) {
  spec.validate();
  if (centers.rows() > 0 && queries.rows() > 0) {
    check_same_dimension(queries.cols(), centers.cols(), "cross_gram");
  }
  Eigen::MatrixXd values(queries.rows(), centers.rows());
  for (Eigen::Index q = 0; q < queries.rows(); ++q) {
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      values(q, c) = gaussian((queries.row(q) - centers.row(c)).squaredNorm(), spec.bandwidth);
    }
  }
  return values;
}

}  // namespace dkr
