#pragma once

#include <stdexcept>
#include <string>

namespace mimd {

// Error hierarchy mapped onto process exit codes:
//   1 validation (bad arguments, malformed input data, broken invariants)
//   2 computation (non-convergence, degenerate calibration, non-finite results)
//   3 I/O (unreadable or unwritable files)
class Error : public std::runtime_error {
public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error(msg, 1) {}
};

class ComputationError : public Error {
public:
  explicit ComputationError(const std::string& msg) : Error(msg, 2) {}
};

class ConvergenceError : public ComputationError {
public:
  explicit ConvergenceError(const std::string& msg) : ComputationError(msg) {}
};

class CalibrationError : public ComputationError {
public:
  explicit CalibrationError(const std::string& msg) : ComputationError(msg) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg, 3) {}
};

}  // namespace mimd
