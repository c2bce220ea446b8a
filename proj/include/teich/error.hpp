#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace teich {

// Error taxonomy. The CLI maps these onto exit codes:
// numerical failures and exhausted budgets -> 2, bad inputs -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested exactly at a pole of a meromorphic function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Series or quadrature failed to reach its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::complex<double> partial = {})
      : Error(what), partial_(partial) {}
  std::complex<double> partial() const noexcept { return partial_; }

 private:
  std::complex<double> partial_;
};

/// An enumeration or search hit its configured work budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t partial_count = 0)
      : Error(what), partial_count_(partial_count) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace teich
