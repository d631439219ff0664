#pragma once

#include <stdexcept>
#include <string>

namespace hyperapprox {

// Argument outside the domain of a function (|x| > 1, nu <= -1, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Basis or moment index out of range.
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Malformed input file or configuration.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed (non-convergence, node on a singularity, ...).
// `op()` names the operation that failed so callers can report it.
class NumericalError : public std::runtime_error {
public:
  NumericalError(std::string op, const std::string& what)
      : std::runtime_error(op + ": " + what), op_(std::move(op)) {}

  const std::string& op() const noexcept { return op_; }

private:
  std::string op_;
};

} // namespace hyperapprox
