// errors.hpp — typed error hierarchy thrown across the library
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace omcsim {

// invalid or out-of-domain input; carries the name of the offending field
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// mutually incompatible objects combined, e.g. transfer rows from different
// sideband offsets fed to one quadrature
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// parametric instability, or a (near-)singular sideband system; carries the
// offending rate or frequency in rad/s
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& reason, double where)
      : std::runtime_error(reason), where_(where) {}

  double where() const noexcept { return where_; }

 private:
  double where_;
};

// a numeric routine could not reach its accuracy target
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a minimization failed to bracket or converge; carries the scanned
// (argument, objective) profile for diagnosis
class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string& reason,
                    std::vector<std::pair<double, double>> profile)
      : std::runtime_error(reason), profile_(std::move(profile)) {}

  const std::vector<std::pair<double, double>>& profile() const noexcept {
    return profile_;
  }

 private:
  std::vector<std::pair<double, double>> profile_;
};

// malformed job configuration (drivers and command line)
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace omcsim
