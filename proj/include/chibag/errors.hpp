#ifndef CHIBAG_ERRORS_HPP
#define CHIBAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chibag {

/// Argument outside the mathematical domain of an operation (odd m, x < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole of a meromorphic function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Series or iteration did not reach its tolerance within the allowed budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check between two evaluation routes failed.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace chibag

#endif  // CHIBAG_ERRORS_HPP
