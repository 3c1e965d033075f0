#pragma once

#include <stdexcept>
#include <string>

namespace tnbsd {

/// Process exit codes used by the command-line tool. Library errors carry
/// the code they map to so callers never need a translation table.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kParse = 3,
  kSolver = 4,
  kDimension = 5,
  kNumeric = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::kIo, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Iterative eigensolver gave up. `residual` is the worst relative Ritz
/// residual among the wanted eigenvalues at the last restart.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int restarts)
      : Error(ExitCode::kSolver, what), residual_(residual), restarts_(restarts) {}
  double residual() const noexcept { return residual_; }
  int restarts() const noexcept { return restarts_; }

 private:
  double residual_;
  int restarts_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ExitCode::kDimension, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ExitCode::kNumeric, what) {}
};

}  // namespace tnbsd
