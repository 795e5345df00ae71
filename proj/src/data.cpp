#include "dkr/data.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "dkr/errors.hpp"
#include "dkr/rng.hpp"

namespace dkr {

void Dataset::validate() const {
  if (rows() < 1 || dim() < 1) {
    std::ostringstream msg;
    msg << "dataset must have at least one row and one covariate column, got " << rows() << "x"
        << dim();
    throw ArgumentError(msg.str());
  }
  if (labels.size() != rows()) {
    std::ostringstream msg;
    msg << "dataset has " << rows() << " rows but " << labels.size() << " labels";
    throw ArgumentError(msg.str());
  }
  if (!covariates.allFinite() || !labels.allFinite()) {
    throw ArgumentError("dataset contains non-finite values");
  }
}

void NoiseSpec::validate() const {
  switch (family) {
    case NoiseFamily::None:
      return;
    case NoiseFamily::Gaussian:
      if (!(std::isfinite(sigma) && sigma >= 0.0)) {
        throw ArgumentError("Gaussian noise deviation must be nonnegative and finite");
      }
      return;
    case NoiseFamily::Uniform:
      if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
        throw ArgumentError("Uniform noise bounds must be finite with lo <= hi");
      }
      return;
  }
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double sinc_surface(double x1, double x2) {
  return sinc(20.0 * x1 - 10.0) * sinc(20.0 * x2 - 10.0);
}

namespace {

double draw_noise(const NoiseSpec& noise, SplitMix64& rng) {
  switch (noise.family) {
    case NoiseFamily::None:
      return 0.0;
    case NoiseFamily::Gaussian:
      return rng.normal(0.0, noise.sigma);
    case NoiseFamily::Uniform:
      return rng.uniform(noise.lo, noise.hi);
  }
  return 0.0;
}

std::string noise_tag(const NoiseSpec& noise) {
  std::ostringstream tag;
  switch (noise.family) {
    case NoiseFamily::None:
      tag << "none";
      break;
    case NoiseFamily::Gaussian:
      tag << "gaussian(sigma=" << noise.sigma << ")";
      break;
    case NoiseFamily::Uniform:
      tag << "uniform(" << noise.lo << "," << noise.hi << ")";
      break;
  }
  return tag.str();
}

}  // namespace

Dataset gen_sinc(Eigen::Index n, const NoiseSpec& noise, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("gen_sinc: sample size must be >= 1");
  noise.validate();

  SplitMix64 rng(seed);
  Dataset data;
  data.covariates.resize(n, 2);
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x1 = rng.uniform01();
    const double x2 = rng.uniform01();
    data.covariates(i, 0) = x1;
    data.covariates(i, 1) = x2;
    data.labels[i] = sinc_surface(x1, x2) + draw_noise(noise, rng);
  }
  std::ostringstream tag;
  tag << "sinc(n=" << n << ",noise=" << noise_tag(noise) << ",seed=" << seed
      << ",rng=" << kRngAlgorithm << ")";
  data.provenance = tag.str();
  return data;
}

Dataset gen_sinc_mixture(Eigen::Index n_clean, Eigen::Index n_outlier, double sigma, double lo,
                         double hi, std::uint64_t seed) {
  if (n_clean < 0 || n_outlier < 0 || n_clean + n_outlier < 1) {
    throw ArgumentError("gen_sinc_mixture: counts must be nonnegative and sum to >= 1");
  }
  NoiseSpec::gaussian(sigma).validate();
  NoiseSpec::uniform(lo, hi).validate();

  const Eigen::Index n = n_clean + n_outlier;
  SplitMix64 rng(seed);
  Dataset data;
  data.covariates.resize(n, 2);
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x1 = rng.uniform01();
    const double x2 = rng.uniform01();
    const double noise =
        i < n_clean ? rng.normal(0.0, sigma) : rng.uniform(lo, hi);
    data.covariates(i, 0) = x1;
    data.covariates(i, 1) = x2;
    data.labels[i] = sinc_surface(x1, x2) + noise;
  }

  // Seeded Fisher-Yates shuffle of the concatenated regimes.
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const Eigen::Index j =
        static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
    data.covariates.row(i).swap(data.covariates.row(j));
    std::swap(data.labels[i], data.labels[j]);
  }

  std::ostringstream tag;
  tag << "sinc-mixture(clean=" << n_clean << ",outlier=" << n_outlier << ",sigma=" << sigma
      << ",uniform=[" << lo << "," << hi << "],seed=" << seed << ",rng=" << kRngAlgorithm << ")";
  data.provenance = tag.str();
  return data;
}

LinearSample gen_linear(Eigen::Index n, Eigen::Index d, double sigma, std::uint64_t seed) {
  if (n < 1 || d < 1) throw ArgumentError("gen_linear: n and d must be >= 1");
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw ArgumentError("gen_linear: noise deviation must be nonnegative and finite");
  }

  SplitMix64 rng(seed);
  LinearSample sample;
  sample.beta.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) sample.beta[j] = rng.uniform01();

  sample.data.covariates.resize(n, d);
  sample.data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) sample.data.covariates(i, j) = rng.normal();
    sample.data.labels[i] =
        sample.data.covariates.row(i).dot(sample.beta) + (sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0);
  }
  std::ostringstream tag;
  tag << "linear(n=" << n << ",d=" << d << ",sigma=" << sigma << ",seed=" << seed
      << ",rng=" << kRngAlgorithm << ")";
  sample.data.provenance = tag.str();
  return sample;
}

namespace {

std::vector<std::string> split_line(const std::string& line, std::size_t row_number) {
  if (line.find('"') != std::string::npos || line.find('\'') != std::string::npos) {
    std::ostringstream msg;
    msg << "CSV row " << row_number << ": quoted fields are not supported";
    throw DataError(msg.str());
  }
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string trim(const std::string& text) {
  std::size_t first = 0;
  std::size_t last = text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
  return text.substr(first, last - first);
}

double parse_cell(const std::string& raw, std::size_t row_number, std::size_t column) {
  const std::string cell = trim(raw);
  if (cell.empty()) {
    std::ostringstream msg;
    msg << "CSV row " << row_number << ", column " << column << ": missing value";
    throw DataError(msg.str());
  }
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "CSV row " << row_number << ", column " << column << ": '" << cell
        << "' is not a finite number";
    throw DataError(msg.str());
  }
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file '" + path + "'");

  std::string line;
  std::size_t row_number = 0;
  std::vector<std::string> header;
  if (has_header) {
    if (!std::getline(in, line)) throw DataError("CSV file '" + path + "' is empty");
    ++row_number;
    for (auto& cell : split_line(line, row_number)) header.push_back(trim(cell));
  }

  std::vector<std::vector<double>> rows;
  std::size_t width = header.size();
  while (std::getline(in, line)) {
    ++row_number;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line, row_number);
    if (width == 0) {
      width = cells.size();
    } else if (cells.size() != width) {
      std::ostringstream msg;
      msg << "CSV row " << row_number << ": expected " << width << " fields, found "
          << cells.size();
      throw DataError(msg.str());
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      values.push_back(parse_cell(cells[c], row_number, c));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError("CSV file '" + path + "' has no data rows");
  if (width < 2) throw DataError("CSV file '" + path + "' needs a label column plus covariates");

  // Resolve the label column: header name first, then 0-based index.
  std::size_t label_index = width;
  if (has_header) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == label_column) {
        label_index = c;
        break;
      }
    }
  }
  if (label_index == width) {
    const std::string wanted = trim(label_column);
    char* end = nullptr;
    errno = 0;
    const long parsed = std::strtol(wanted.c_str(), &end, 10);
    const bool is_index =
        !wanted.empty() && end == wanted.c_str() + wanted.size() && errno != ERANGE;
    if (is_index && parsed >= 0 && static_cast<std::size_t>(parsed) < width) {
      label_index = static_cast<std::size_t>(parsed);
    } else {
      throw DataError("label column '" + label_column + "' not found in '" + path + "'");
    }
  }

  Dataset data;
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(width - 1);
  data.covariates.resize(n, d);
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_index) {
        data.labels[i] = rows[static_cast<std::size_t>(i)][c];
      } else {
        data.covariates(i, k++) = rows[static_cast<std::size_t>(i)][c];
      }
    }
  }
  data.provenance = "csv(" + path + ")";
  data.validate();
  return data;
}

void save_csv(const Dataset& data, const std::string& path, bool with_header) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.precision(17);
  if (with_header) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) out << 'x' << j << ',';
    out << "y\n";
  }
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) out << data.covariates(i, j) << ',';
    out << data.labels[i] << '\n';
  }
  if (!out) throw DataError("failed while writing CSV to '" + path + "'");
}

Eigen::MatrixXd Standardization::apply(Eigen::Ref<const Eigen::MatrixXd> covariates) const {
  if (covariates.cols() != mean.size()) {
    throw ArgumentError("standardization transform dimension does not match covariates");
  }
  Eigen::MatrixXd out = covariates;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    out.col(j) = (out.col(j).array() - mean[j]) / scale[j];
  }
  return out;
}

std::pair<Dataset, Standardization> standardize(const Dataset& data) {
  data.validate();
  const Eigen::Index n = data.rows();
  if (n < 2) throw ArgumentError("standardize: need at least two rows");

  Standardization transform;
  transform.mean.resize(data.dim());
  transform.scale.resize(data.dim());
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    const double mean = data.covariates.col(j).mean();
    const double variance =
        (data.covariates.col(j).array() - mean).square().sum() / static_cast<double>(n - 1);
    if (variance <= 0.0) {
      std::ostringstream msg;
      msg << "standardize: covariate column " << j << " has zero variance";
      throw DataError(msg.str());
    }
    transform.mean[j] = mean;
    transform.scale[j] = std::sqrt(variance);
  }

  Dataset out;
  out.covariates = transform.apply(data.covariates);
  out.labels = data.labels;
  out.provenance = data.provenance.empty() ? "standardized" : data.provenance + "+standardized";
  return {std::move(out), std::move(transform)};
}

}  // namespace dkr
