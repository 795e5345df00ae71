#include "dkr/fit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "dkr/errors.hpp"
#include "dkr/parallel.hpp"
#include "dkr/rng.hpp"

namespace dkr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string shortest(double value) { return nlohmann::json(value).dump(); }

}  // namespace

PartitionPlan partition(Eigen::Index n, int m, std::uint64_t seed) {
  if (m < 1) throw ArgumentError("partition: segment count must be >= 1");
  if (static_cast<Eigen::Index>(m) > n) {
    std::ostringstream msg;
    msg << "partition: cannot split " << n << " rows into " << m << " segments";
    throw ArgumentError(msg.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  SplitMix64 rng(seed);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }

  PartitionPlan plan;
  plan.num_segments = m;
  plan.seed = seed;
  plan.assignments.assign(static_cast<std::size_t>(n), 0);
  plan.segments.resize(static_cast<std::size_t>(m));

  const Eigen::Index base = n / m;
  const Eigen::Index extra = n % m;  // the first `extra` segments take one more row
  std::size_t cursor = 0;
  for (int j = 0; j < m; ++j) {
    const Eigen::Index size = base + (j < extra ? 1 : 0);
    auto& segment = plan.segments[static_cast<std::size_t>(j)];
    segment.reserve(static_cast<std::size_t>(size));
    for (Eigen::Index k = 0; k < size; ++k) {
      const Eigen::Index row = order[cursor++];
      segment.push_back(row);
      plan.assignments[static_cast<std::size_t>(row)] = j;
    }
  }
  return plan;
}

void FitConfig::validate() const {
  kernel.validate();
  loss.validate();
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw ArgumentError("fit config: lambda must be a nonnegative finite real");
  }
  if (num_segments < 1) throw ArgumentError("fit config: segment count must be >= 1");
  if (!(std::isfinite(truncation) && truncation > 0.0)) {
    throw ArgumentError("fit config: truncation level must be positive and finite");
  }
  if (solver.max_iterations < 1) throw ArgumentError("fit config: max_iterations must be >= 1");
  if (!(solver.tolerance > 0.0)) throw ArgumentError("fit config: solver tolerance must be positive");
  if (workers < 0) throw ArgumentError("fit config: worker count must be >= 0");
}

std::string FitConfig::describe() const {
  std::ostringstream out;
  out << "loss=" << to_string(loss.family) << ";penalty=" << to_string(penalty.family)
      << ";epsilon=" << shortest(loss.epsilon) << ";tau=" << shortest(kernel.bandwidth)
      << ";lambda=" << shortest(lambda) << ";m=" << num_segments
      << ";trunc=" << shortest(truncation) << ";max_iter=" << solver.max_iterations
      << ";tol=" << shortest(solver.tolerance) << ";seed=" << seed << ";rng=" << kRngAlgorithm;
  return out.str();
}

namespace {

KernelExpansion fit_local_impl(Eigen::Ref<const Eigen::MatrixXd> covariates,
                               Eigen::Ref<const Eigen::VectorXd> labels, const FitConfig& config,
                               SegmentReport* report) {
  if (covariates.rows() == 0) throw ArgumentError("fit_local: empty segment");
  if (covariates.rows() != labels.size()) {
    throw ArgumentError("fit_local: covariate/label row mismatch");
  }

  const auto gram_start = Clock::now();
  const Eigen::MatrixXd gram = gram_matrix(config.kernel, covariates);
  if (report) report->gram_seconds = seconds_since(gram_start);

  KernelExpansion expansion;
  expansion.kernel = config.kernel;
  expansion.centers = covariates;

  const bool closed_form = config.loss.family == LossFamily::Quadratic &&
                           config.penalty.family == PenaltyFamily::RkhsNormSq;
  const auto solve_start = Clock::now();
  if (closed_form) {
    expansion.coefficients = solve_kernel_ridge(gram, labels, config.lambda, config.solver);
  } else {
    SolveResult result = solve_generic(config.loss, config.penalty, gram, labels, config.lambda,
                                       config.solver);
    expansion.coefficients = std::move(result.coefficients);
    if (report) report->converged = result.converged;
  }
  if (report) report->solve_seconds = seconds_since(solve_start);
  return expansion;
}

}  // namespace

KernelExpansion fit_local(Eigen::Ref<const Eigen::MatrixXd> covariates,
                          Eigen::Ref<const Eigen::VectorXd> labels, const FitConfig& config) {
  config.validate();
  return fit_local_impl(covariates, labels, config, nullptr);
}

FitOutcome fit_dkr_detailed(const Dataset& data, const FitConfig& config) {
  config.validate();
  data.validate();
  if (static_cast<Eigen::Index>(config.num_segments) > data.rows()) {
    std::ostringstream msg;
    msg << "fit: " << config.num_segments << " segments exceed the " << data.rows()
        << " available rows";
    throw ArgumentError(msg.str());
  }

  const auto partition_start = Clock::now();
  const PartitionPlan plan = partition(data.rows(), config.num_segments, config.seed);
  const double partition_seconds = seconds_since(partition_start);

  const std::size_t m = plan.segments.size();
  std::vector<KernelExpansion> locals(m);
  std::vector<SegmentReport> reports(m);

  parallel_for(config.workers, m, [&](std::size_t j) {
    const auto& rows = plan.segments[j];
    Eigen::MatrixXd covariates(static_cast<Eigen::Index>(rows.size()), data.dim());
    Eigen::VectorXd labels(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      covariates.row(static_cast<Eigen::Index>(k)) = data.covariates.row(rows[k]);
      labels[static_cast<Eigen::Index>(k)] = data.labels[rows[k]];
    }
    FitConfig segment_config = config;
    segment_config.solver.seed = mix_seed(config.seed, static_cast<std::uint64_t>(j));
    try {
      locals[j] = fit_local_impl(covariates, labels, segment_config, &reports[j]);
    } catch (const NumericError& err) {
      throw NumericError("segment " + std::to_string(j) + ": " + err.what());
    } catch (const ArgumentError& err) {
      throw ArgumentError("segment " + std::to_string(j) + ": " + err.what());
    }
  });

  FitOutcome outcome{AveragedEstimator(std::move(locals), config.truncation), partition_seconds,
                     std::move(reports)};
  return outcome;
}

AveragedEstimator fit_dkr(const Dataset& data, const FitConfig& config) {
  return fit_dkr_detailed(data, config).estimator;
}

double FitOutcome::total_solve_seconds() const {
  double total = 0.0;
  for (const auto& report : segments) total += report.solve_seconds;
  return total;
}

double FitOutcome::max_segment_solve_seconds() const {
  double worst = 0.0;
  for (const auto& report : segments) worst = std::max(worst, report.solve_seconds);
  return worst;
}

double FitOutcome::total_gram_seconds() const {
  double total = 0.0;
  for (const auto& report : segments) total += report.gram_seconds;
  return total;
}

double empirical_risk_of_average(const AveragedEstimator& estimator, const Dataset& data,
                                 const LossSpec& loss) {
  if (data.rows() < 1) throw ArgumentError("empirical_risk_of_average: empty dataset");
  data.validate();
  const Eigen::VectorXd predictions = estimator.predict(data.covariates);
  return empirical_risk(loss, predictions, data.labels);
}

}  // namespace dkr
