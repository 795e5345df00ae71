#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>

namespace dkr {

/// A labeled sample: covariates row-per-observation, labels aligned by row.
/// Immutable by convention once produced by a generator or loader.
struct Dataset {
  Eigen::MatrixXd covariates;  // N x d
  Eigen::VectorXd labels;      // N
  std::string provenance;      // optional tag describing where the data came from

  Eigen::Index rows() const { return covariates.rows(); }
  Eigen::Index dim() const { return covariates.cols(); }

  /// Throws ArgumentError on empty data, row mismatch, or non-finite values.
  void validate() const;
};

enum class NoiseFamily { None, Gaussian, Uniform };

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::None;
  double sigma = 0.0;  // Gaussian standard deviation
  double lo = 0.0;     // Uniform bounds
  double hi = 0.0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sigma) { return {NoiseFamily::Gaussian, sigma, 0.0, 0.0}; }
  static NoiseSpec uniform(double lo, double hi) { return {NoiseFamily::Uniform, 0.0, lo, hi}; }

  void validate() const;
};

/// sin(x)/x continued by 1 at the origin; switches to the series 1 - x^2/6
/// for |x| < 1e-8 where the quotient loses digits.
double sinc(double x);

/// The noiseless regression surface behind the synthetic generators:
/// sinc(20*x1 - 10) * sinc(20*x2 - 10) on the unit square.
double sinc_surface(double x1, double x2);

/// N covariates uniform on [0,1]^2, labels sinc_surface plus the requested
/// noise. Pure function of (n, noise, seed).
Dataset gen_sinc(Eigen::Index n, const NoiseSpec& noise, std::uint64_t seed);

/// Mixture sample for robustness studies: n_clean rows with Gaussian noise
/// of deviation sigma plus n_outlier rows with Uniform[lo, hi] noise,
/// concatenated and then shuffled with the seed. The provenance tag records
/// both counts and noise settings.
Dataset gen_sinc_mixture(Eigen::Index n_clean, Eigen::Index n_outlier, double sigma, double lo,
                         double hi, std::uint64_t seed);

struct LinearSample {
  Dataset data;
  Eigen::VectorXd beta;  // the coefficients the labels were generated from
};

/// Linear model sample: covariates i.i.d. standard normal, beta drawn
/// uniformly from [0,1]^d, labels x.beta plus Gaussian noise of deviation
/// sigma. Returns the true beta alongside the data for error measurement.
LinearSample gen_linear(Eigen::Index n, Eigen::Index d, double sigma, std::uint64_t seed);

/// Strict numeric CSV reader: comma separated, '.' decimal, optional header
/// row, no quoting. The label column is named (with a header) or given as a
/// 0-based index. Any malformed, missing, or non-numeric field fails with a
/// DataError naming the row. Distinct messages for a missing file, an empty
/// table, and a bad cell.
Dataset load_csv(const std::string& path, const std::string& label_column, bool has_header);

/// Writes the dataset in the same dialect, full round-trip precision
/// (17 significant digits), label last. Header row "x0,...,x{d-1},y" when
/// requested.
void save_csv(const Dataset& data, const std::string& path, bool with_header);

/// Per-column affine transform produced by standardize(); apply() maps raw
/// covariates into the standardized frame (e.g. for test data).
struct Standardization {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;  // sample standard deviation, N-1 denominator

  Eigen::MatrixXd apply(Eigen::Ref<const Eigen::MatrixXd> covariates) const;
};

/// Centers every covariate column to mean 0 and scales it to sample standard
/// deviation 1 (N-1 denominator). Labels pass through. Requires N >= 2;
/// a zero-variance column raises a DataError naming the column.
std::pair<Dataset, Standardization> standardize(const Dataset& data);

}  // namespace dkr
