#include "dkr/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dkr/errors.hpp"

namespace dkr {

double truncate(double value, double limit) {
  if (!(std::isfinite(limit) && limit > 0.0)) {
    std::ostringstream msg;
    msg << "truncation level must be a positive finite real, got " << limit;
    throw ArgumentError(msg.str());
  }
  return std::min(limit, std::max(-limit, value));
}

void KernelExpansion::validate() const {
  kernel.validate();
  if (centers.rows() < 1) throw ArgumentError("kernel expansion needs at least one center");
  if (coefficients.size() != centers.rows()) {
    std::ostringstream msg;
    msg << "kernel expansion has " << centers.rows() << " centers but " << coefficients.size()
        << " coefficients";
    throw ArgumentError(msg.str());
  }
}

double KernelExpansion::evaluate(Eigen::Ref<const Eigen::VectorXd> x) const {
  if (x.size() != centers.cols()) {
    std::ostringstream msg;
    msg << "evaluate: point dimension " << x.size() << " does not match centers dimension "
        << centers.cols();
    throw ArgumentError(msg.str());
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < centers.rows(); ++i) {
    total += coefficients[i] * kernel_eval(kernel, centers.row(i), x);
  }
  return total;
}

Eigen::VectorXd KernelExpansion::evaluate(Eigen::Ref<const Eigen::MatrixXd> xs) const {
  return cross_gram(kernel, centers, xs) * coefficients;
}

double KernelExpansion::evaluate_truncated(Eigen::Ref<const Eigen::VectorXd> x, double limit) const {
  return truncate(evaluate(x), limit);
}

double KernelExpansion::rkhs_norm_sq() const {
  const Eigen::MatrixXd gram = gram_matrix(kernel, centers);
  const double value = coefficients.dot(gram * coefficients);
  if (value < 0.0) {
    if (value < -1e-10) {
      std::ostringstream msg;
      msg << "rkhs_norm_sq: quadratic form is " << value << ", below the roundoff tolerance";
      throw NumericError(msg.str());
    }
    return 0.0;
  }
  return value;
}

AveragedEstimator::AveragedEstimator(std::vector<KernelExpansion> locals, double truncation)
    : locals_(std::move(locals)), truncation_(truncation) {
  if (locals_.empty()) throw ArgumentError("averaged estimator needs at least one local");
  if (!(std::isfinite(truncation_) && truncation_ > 0.0)) {
    throw ArgumentError("averaged estimator truncation level must be positive");
  }
  for (const auto& local : locals_) local.validate();
}

AveragedEstimator AveragedEstimator::from_indexed(
    std::vector<std::pair<int, KernelExpansion>> locals, double truncation) {
  std::sort(locals.begin(), locals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < locals.size(); ++i) {
    if (locals[i].first == locals[i - 1].first) {
      std::ostringstream msg;
      msg << "duplicate segment index " << locals[i].first << " among locals";
      throw ArgumentError(msg.str());
    }
  }
  std::vector<KernelExpansion> ordered;
  ordered.reserve(locals.size());
  for (auto& entry : locals) ordered.push_back(std::move(entry.second));
  return AveragedEstimator(std::move(ordered), truncation);
}

double AveragedEstimator::predict(Eigen::Ref<const Eigen::VectorXd> x) const {
  double total = 0.0;
  for (const auto& local : locals_) {
    total += local.evaluate_truncated(x, truncation_);
  }
  return total / static_cast<double>(locals_.size());
}

Eigen::VectorXd AveragedEstimator::predict(Eigen::Ref<const Eigen::MatrixXd> xs) const {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(xs.rows());
  for (const auto& local : locals_) {
    Eigen::VectorXd values = local.evaluate(xs);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      total[i] += truncate(values[i], truncation_);
    }
  }
  return total / static_cast<double>(locals_.size());
}

namespace {

constexpr const char* kFormatTag = "dkr-model";
constexpr int kFormatVersion = 1;

nlohmann::json expansion_to_json(const KernelExpansion& expansion) {
  nlohmann::json centers = nlohmann::json::array();
  for (Eigen::Index i = 0; i < expansion.centers.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < expansion.centers.cols(); ++j) {
      row.push_back(expansion.centers(i, j));
    }
    centers.push_back(std::move(row));
  }
  nlohmann::json coefficients = nlohmann::json::array();
  for (Eigen::Index i = 0; i < expansion.coefficients.size(); ++i) {
    coefficients.push_back(expansion.coefficients[i]);
  }
  return {{"centers", std::move(centers)}, {"coefficients", std::move(coefficients)}};
}

KernelExpansion expansion_from_json(const nlohmann::json& doc, const KernelSpec& kernel) {
  const auto& centers = doc.at("centers");
  const auto& coefficients = doc.at("coefficients");
  if (centers.empty() || centers.size() != coefficients.size()) {
    throw DataError("model document: centers/coefficients size mismatch");
  }
  const std::size_t n = centers.size();
  const std::size_t d = centers[0].size();
  KernelExpansion expansion;
  expansion.kernel = kernel;
  expansion.centers.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  expansion.coefficients.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (centers[i].size() != d) throw DataError("model document: ragged center rows");
    for (std::size_t j = 0; j < d; ++j) {
      expansion.centers(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          centers[i][j].get<double>();
    }
    expansion.coefficients[static_cast<Eigen::Index>(i)] = coefficients[i].get<double>();
  }
  return expansion;
}

}  // namespace

std::string model_to_json(const AveragedEstimator& estimator) {
  nlohmann::json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kFormatVersion;
  doc["kernel"] = {{"family", to_string(estimator.locals().front().kernel.family)},
                   {"bandwidth", estimator.locals().front().kernel.bandwidth}};
  doc["truncation"] = estimator.truncation();
  nlohmann::json locals = nlohmann::json::array();
  for (const auto& local : estimator.locals()) locals.push_back(expansion_to_json(local));
  doc["locals"] = std::move(locals);
  return doc.dump(2);
}

AveragedEstimator model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("model document is not valid JSON: ") + err.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormatTag) {
      throw DataError("model document has format tag '" + doc.at("format").get<std::string>() +
                      "', expected '" + kFormatTag + "'");
    }
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported model document version " +
                      std::to_string(doc.at("version").get<int>()));
    }
    KernelSpec kernel;
    const std::string family = doc.at("kernel").at("family").get<std::string>();
    if (family != "gaussian") throw DataError("unknown kernel family '" + family + "'");
    kernel.family = KernelFamily::Gaussian;
    kernel.bandwidth = doc.at("kernel").at("bandwidth").get<double>();

    std::vector<KernelExpansion> locals;
    for (const auto& entry : doc.at("locals")) {
      locals.push_back(expansion_from_json(entry, kernel));
    }
    return AveragedEstimator(std::move(locals), doc.at("truncation").get<double>());
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("model document is missing required fields: ") + err.what());
  }
}

void save_model(const AveragedEstimator& estimator, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << model_to_json(estimator) << '\n';
  if (!out) throw DataError("failed while writing model to '" + path + "'");
}

AveragedEstimator load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace dkr
