#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace frackappa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range physical or numerical parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A run configuration that cannot be used. Carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public NumericError {
 public:
  CalibrationError(const std::string& what, double last_residual, double last_offset)
      : NumericError(what), last_residual_(last_residual), last_offset_(last_offset) {}
  double last_residual() const noexcept { return last_residual_; }
  double last_offset() const noexcept { return last_offset_; }

 private:
  double last_residual_;
  double last_offset_;
};

/// Evaluation of a closed-form expression at one of its singular points.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace frackappa
