#pragma once

#include <stdexcept>
#include <string>

namespace wpc {

/// A precondition on an argument was violated (out-of-range power, ε, blocklength...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method failed to meet its residual target.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A search produced no admissible point.
class OptimizationError : public std::runtime_error {
 public:
  explicit OptimizationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wpc
