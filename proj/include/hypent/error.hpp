#pragma once

#include <stdexcept>
#include <string>

namespace hypent {

// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A composed isometry pushed a point past the boundary guard.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConstructionFailure : public Error {
 public:
  ConstructionFailure(const std::string& what, double best_value)
      : Error(what), best_value_(best_value) {}
  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

// No element of the reduction set qualified; the group construction is defective.
class ReductionFailure : public Error {
 public:
  using Error::Error;
};

// Enumeration or search ran past its element budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double completed_radius)
      : Error(what), completed_radius_(completed_radius) {}
  double completed_radius() const noexcept { return completed_radius_; }

 private:
  double completed_radius_;
};

// A shift point was moved further than its finite window supports.
class WindowExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace hypent
