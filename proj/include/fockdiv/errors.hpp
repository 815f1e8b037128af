#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockdiv {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (negative order, non-positive weight...).
class DomainError : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

// A hypothesis the caller was supposed to establish does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// A computed quantity contradicts the property it was meant to exhibit.
class VerificationError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Restriction operator is not onto: carries a data vector it cannot reach.
class NotInterpolatingError : public PreconditionError {
public:
  NotInterpolatingError(const std::string& what,
                        std::vector<std::complex<double>> null_direction,
                        double smallest_singular_value)
      : PreconditionError(what), null_direction_(std::move(null_direction)),
        smallest_(smallest_singular_value) {}
  const std::vector<std::complex<double>>& null_direction() const noexcept {
    return null_direction_;
  }
  double smallest_singular_value() const noexcept { return smallest_; }

private:
  std::vector<std::complex<double>> null_direction_;
  double smallest_;
};

// Process exit codes used by the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitPrecondition = 2,
  kExitResource = 3,
};

int exit_code_for(const std::exception& e) noexcept;

} // namespace fockdiv
