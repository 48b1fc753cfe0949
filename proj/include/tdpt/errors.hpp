#ifndef TDPT_ERRORS_HPP
#define TDPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tdpt {

/// Argument outside the mathematical domain of a function (e.g. ln Gamma at x <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters for which the X1 construction collapses (beta == alpha).
class DegenerateParameters : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation at or beyond a wall where the expression diverges.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Position outside the box [0, L(t)].
class OutOfBoxError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature did not meet its tolerance; carries the last two estimates.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what + " (last estimates " + std::to_string(previous) + ", " +
                           std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace tdpt

#endif  // TDPT_ERRORS_HPP
