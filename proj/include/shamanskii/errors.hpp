#ifndef SHAMANSKII_ERRORS_HPP_
#define SHAMANSKII_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace shamanskii {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A pivot fell at or below the singularity threshold during elimination.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t step, double pivot, double threshold)
      : Error("singular matrix: pivot " + std::to_string(pivot) +
              " at step " + std::to_string(step) + " is not above " +
              std::to_string(threshold)),
        step_(step),
        pivot_(pivot),
        threshold_(threshold) {}

  std::size_t step() const { return step_; }
  double pivot() const { return pivot_; }
  double threshold() const { return threshold_; }

 private:
  std::size_t step_;
  double pivot_;
  double threshold_;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

/// An iterate or residual picked up NaN/Inf during the iteration.
class NonFiniteIterate : public Error {
 public:
  using Error::Error;
};

/// The residual or Jacobian was evaluated outside the problem's real domain.
class DomainViolation : public Error {
 public:
  DomainViolation(std::string problem_name, std::size_t index,
                  std::string constraint)
      : Error("problem '" + problem_name + "': x[" + std::to_string(index) +
              "] violates " + constraint),
        problem_name_(std::move(problem_name)),
        index_(index),
        constraint_(std::move(constraint)) {}

  const std::string& problem_name() const { return problem_name_; }
  /// Zero-based coordinate index.
  std::size_t index() const { return index_; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::string problem_name_;
  std::size_t index_;
  std::string constraint_;
};

class UnknownProblem : public Error {
 public:
  explicit UnknownProblem(const std::string& name)
      : Error("unknown problem '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace shamanskii

#endif  // SHAMANSKII_ERRORS_HPP_
