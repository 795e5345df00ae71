#pragma once

#include <stdexcept>
#include <string>

namespace dkr {

/// Invalid argument or precondition violation (bad shapes, out-of-range
/// parameters, inconsistent configuration).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Problem with external data: unreadable file, malformed CSV row,
/// zero-variance column, and similar ingestion failures.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure inside a solver (singular system, non-finite objective).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dkr
