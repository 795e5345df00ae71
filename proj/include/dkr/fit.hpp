#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dkr/data.hpp"
#include "dkr/kernel.hpp"
#include "dkr/losses.hpp"
#include "dkr/model.hpp"
#include "dkr/solver.hpp"

namespace dkr {

/// A random, even split of N row indices into m segments. Segments are
/// disjoint, cover every index, and differ in size by at most one (the first
/// N mod m segments take the extra row). The within-segment order is the
/// shuffled order, which fixes the row order each local fit sees.
struct PartitionPlan {
  int num_segments = 1;
  std::uint64_t seed = 0;
  std::vector<int> assignments;                     // length N, values in [0, m)
  std::vector<std::vector<Eigen::Index>> segments;  // ordered row indices per segment
};

/// Deals a seeded uniform permutation of 0..n-1 into m contiguous blocks.
/// Throws ArgumentError unless 1 <= m <= n.
PartitionPlan partition(Eigen::Index n, int m, std::uint64_t seed);

/// Everything a distributed fit needs: the kernel, the loss/penalty pair,
/// the regularization weight, the segment count, the truncation level
/// applied to each local before averaging, and solver/seed/worker knobs.
struct FitConfig {
  KernelSpec kernel;
  LossSpec loss = LossSpec::quadratic();
  PenaltySpec penalty = PenaltySpec::rkhs_norm_sq();
  double lambda = 1e-3;
  int num_segments = 1;
  double truncation = 1.0;
  SolverOptions solver;
  std::uint64_t seed = 0;
  /// Worker threads for the local fits; 0 means hardware concurrency.
  /// Never affects results, only wall time.
  int workers = 0;

  void validate() const;

  /// Key=value summary echoed into result files (reproducibility contract).
  std::string describe() const;
};

/// Fits one segment: builds its Gram matrix, dispatches to the closed-form
/// ridge solver for the Quadratic/RkhsNormSq pair and to the generic
/// proximal-subgradient solver otherwise, and returns the expansion with the
/// segment covariates as centers.
KernelExpansion fit_local(Eigen::Ref<const Eigen::MatrixXd> covariates,
                          Eigen::Ref<const Eigen::VectorXd> labels, const FitConfig& config);

struct SegmentReport {
  double gram_seconds = 0.0;
  double solve_seconds = 0.0;
  bool converged = true;
};

struct FitOutcome {
  AveragedEstimator estimator;
  double partition_seconds = 0.0;
  std::vector<SegmentReport> segments;

  double total_solve_seconds() const;
  double max_segment_solve_seconds() const;  // the parallel critical path
  double total_gram_seconds() const;
};

/// The full distributed fit: partition, local fits (run on the configured
/// worker count; results are independent of it), truncation level attached,
/// locals assembled in segment order. Any segment failure aborts the whole
/// fit with the segment index in the message; no partial estimator is
/// returned. Deterministic given data, config, and seed.
FitOutcome fit_dkr_detailed(const Dataset& data, const FitConfig& config);
AveragedEstimator fit_dkr(const Dataset& data, const FitConfig& config);

/// Empirical risk of the averaged predictor over `data` under `loss`.
double empirical_risk_of_average(const AveragedEstimator& estimator, const Dataset& data,
                                 const LossSpec& loss);

}  // namespace dkr
