#ifndef QLRA_ERRORS_HPP
#define QLRA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

// Invalid configuration value (sketch size ordering, rank bounds, ...).
struct ParameterError : Error {
  using Error::Error;
};

// Linear system judged numerically singular. Carries the condition estimate
// that triggered the rejection.
struct SingularMatrixError : Error {
  double estimated_condition;
  SingularMatrixError(const std::string& msg, double cond)
      : Error(msg + " (estimated condition " + std::to_string(cond) + ")"),
        estimated_condition(cond) {}
};

// Input numerically rank-deficient where full rank is required.
struct RankError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qlra

#endif
