#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aubin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The simplex iteration cap was hit before a status could be decided.
class LpStalled : public Error {
 public:
  using Error::Error;
};

/// A point was required to lie in a set and does not.
class NotInSet : public Error {
 public:
  using Error::Error;
};

/// The reference point of a problem instance is not one of its solutions.
class NotASolution : public Error {
 public:
  using Error::Error;
};

/// Dykstra's iteration did not reach the residual target.
class ProjectionError : public Error {
 public:
  ProjectionError(const std::string& what, std::vector<double> last_iterate,
                  double residual)
      : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

/// Malformed or inconsistent problem-spec input.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace aubin
