#include "dkr/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dkr/errors.hpp"
#include "dkr/rng.hpp"

namespace dkr {

double rmse(const AveragedEstimator& estimator, const Dataset& test) {
  if (test.rows() < 1) throw ArgumentError("rmse: empty test set");
  test.validate();
  const Eigen::VectorXd predictions = estimator.predict(test.covariates);
  const double mse = (predictions - test.labels).squaredNorm() / static_cast<double>(test.rows());
  return std::sqrt(mse);
}

EstimationErrors estimation_errors(Eigen::Ref<const Eigen::VectorXd> beta_true,
                                   Eigen::Ref<const Eigen::VectorXd> beta_full,
                                   const std::vector<Eigen::VectorXd>& beta_locals) {
  if (beta_locals.empty()) throw ArgumentError("estimation_errors: need at least one local estimate");
  if (beta_full.size() != beta_true.size()) {
    throw ArgumentError("estimation_errors: full-data estimate dimension mismatch");
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(beta_true.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& local : beta_locals) {
    if (local.size() != beta_true.size()) {
      throw ArgumentError("estimation_errors: local estimate dimension mismatch");
    }
    mean += local;
    best = std::min(best, (beta_true - local).squaredNorm());
  }
  mean /= static_cast<double>(beta_locals.size());

  EstimationErrors errors;
  errors.full = (beta_true - beta_full).squaredNorm();
  errors.average = (beta_true - mean).squaredNorm();
  errors.best = best;
  return errors;
}

namespace {

std::string shortest(double value) { return nlohmann::json(value).dump(); }

}  // namespace

std::string MetricReport::csv_header() {
  return "rmse,nd:fit_seconds,nd:critical_path_seconds,nd:gram_seconds,nd:partition_seconds,"
         "repeats,config";
}

std::string MetricReport::to_csv_row() const {
  std::ostringstream row;
  row << (rmse ? shortest(*rmse) : "nan") << ',' << shortest(fit_seconds) << ','
      << shortest(critical_path_seconds) << ',' << shortest(gram_seconds) << ','
      << shortest(partition_seconds) << ',' << repeats << ',' << config_echo;
  return row.str();
}

std::string MetricReport::to_json() const {
  nlohmann::json doc;
  if (rmse) {
    doc["rmse"] = *rmse;
  } else {
    doc["rmse"] = nullptr;
  }
  doc["fit_seconds"] = fit_seconds;
  doc["critical_path_seconds"] = critical_path_seconds;
  doc["gram_seconds"] = gram_seconds;
  doc["partition_seconds"] = partition_seconds;
  doc["per_segment_solve_seconds"] = per_segment_solve_seconds;
  doc["per_run_fit_seconds"] = per_run_fit_seconds;
  doc["repeats"] = repeats;
  doc["config"] = config_echo;
  doc["rng"] = kRngAlgorithm;
  return doc.dump(2);
}

MetricReport time_fit(const Dataset& data, const FitConfig& config, int repeats) {
  if (repeats < 1) throw ArgumentError("time_fit: repeats must be >= 1");

  FitConfig timed = config;
  timed.workers = 1;  // sequential, so per-segment times do not contend

  MetricReport report;
  report.repeats = repeats;
  report.config_echo = timed.describe();

  for (int r = 0; r < repeats; ++r) {
    const FitOutcome outcome = fit_dkr_detailed(data, timed);
    const double run_fit = outcome.total_solve_seconds();
    report.per_run_fit_seconds.push_back(run_fit);
    report.fit_seconds += run_fit;
    report.critical_path_seconds += outcome.max_segment_solve_seconds();
    report.gram_seconds += outcome.total_gram_seconds();
    report.partition_seconds += outcome.partition_seconds;
    if (r == repeats - 1) {
      report.per_segment_solve_seconds.clear();
      for (const auto& segment : outcome.segments) {
        report.per_segment_solve_seconds.push_back(segment.solve_seconds);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(repeats);
  report.fit_seconds *= inv;
  report.critical_path_seconds *= inv;
  report.gram_seconds *= inv;
  report.partition_seconds *= inv;
  return report;
}

}  // namespace dkr
