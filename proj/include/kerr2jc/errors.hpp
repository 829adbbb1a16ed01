#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kerr2jc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (negative rates, manifold index too small, zero detuning in a denominator).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: singular factorization, residual too large, integrator step failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

class DegenerateSteadyStateError : public SolverError {
 public:
  explicit DegenerateSteadyStateError(std::size_t null_dimension)
      : SolverError("steady state is not unique: Liouvillian null space has dimension " +
                    std::to_string(null_dimension)),
        null_dimension_(null_dimension) {}

  std::size_t null_dimension() const noexcept { return null_dimension_; }

 private:
  std::size_t null_dimension_;
};

/// Correlator or amplitude requested on a state without the required photon population.
class UndefinedCorrelatorError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace kerr2jc
