#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "dkr/data.hpp"
#include "dkr/fit.hpp"
#include "dkr/model.hpp"

namespace dkr {

/// Root mean squared prediction error of the averaged estimator over a test
/// set. Throws ArgumentError on an empty test set or mismatched dimension.
double rmse(const AveragedEstimator& estimator, const Dataset& test);

/// The three estimation errors of the distributed linear study, all squared
/// Euclidean distances to the true coefficients: the full-data estimate, the
/// average of the local estimates, and the best single local estimate.
struct EstimationErrors {
  double full = 0.0;     // |beta_true - beta_full|^2
  double average = 0.0;  // |beta_true - mean(locals)|^2
  double best = 0.0;     // min_j |beta_true - locals[j]|^2
};

EstimationErrors estimation_errors(Eigen::Ref<const Eigen::VectorXd> beta_true,
                                   Eigen::Ref<const Eigen::VectorXd> beta_full,
                                   const std::vector<Eigen::VectorXd>& beta_locals);

/// One measurement row. Timing decomposition: `fit_seconds` is the summed
/// per-segment solver time (what a single machine would spend), and
/// `critical_path_seconds` the per-segment maximum (what a fully parallel
/// run would spend); Gram construction and partitioning are reported
/// separately. Timings are wall clock and nondeterministic; their CSV
/// columns carry the nd: prefix so result files can be compared without
/// them.
struct MetricReport {
  std::optional<double> rmse;
  double fit_seconds = 0.0;
  double critical_path_seconds = 0.0;
  double gram_seconds = 0.0;
  double partition_seconds = 0.0;
  std::vector<double> per_segment_solve_seconds;  // from the last repeat
  std::vector<double> per_run_fit_seconds;        // one entry per repeat
  int repeats = 1;
  std::string config_echo;

  static std::string csv_header();
  std::string to_csv_row() const;
  std::string to_json() const;
};

/// Fits `repeats` times (workers pinned to 1 so per-segment times are clean)
/// and averages the timing decomposition. The report keeps per-run totals
/// and the last run's per-segment times; rmse stays unset.
MetricReport time_fit(const Dataset& data, const FitConfig& config, int repeats);

}  // namespace dkr
