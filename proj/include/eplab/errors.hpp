#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace eplab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  explicit InvalidDimension(int dim)
      : Error("invalid spatial dimension " + std::to_string(dim) + " (need dim >= 1)"),
        dim_(dim) {}
  int dim() const { return dim_; }

 private:
  int dim_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed-form bound was evaluated at or past its singular time.
class PastSingularity : public Error {
 public:
  PastSingularity(double t, double blowup_time)
      : Error("evaluation at t = " + std::to_string(t) + " is past the singular time " +
              std::to_string(blowup_time)),
        t_(t),
        blowup_time_(blowup_time) {}
  double time() const { return t_; }
  double blowup_time() const { return blowup_time_; }

 private:
  double t_;
  double blowup_time_;
};

/// A nonfinite value appeared before any detection threshold fired.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double t)
      : Error(what + " at t = " + std::to_string(t)), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

/// Lagrangian shells exchanged radial order. Raised by single steps; the
/// simulation driver reports the same event as blowup data instead.
class CrossedShells : public Error {
 public:
  CrossedShells(double t_before, double t_after)
      : Error("shell crossing between t = " + std::to_string(t_before) +
              " and t = " + std::to_string(t_after)),
        t_before_(t_before),
        t_after_(t_after) {}
  double time_before() const { return t_before_; }
  double time_after() const { return t_after_; }

 private:
  double t_before_;
  double t_after_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Configuration document problem. `line()` is 0 when the problem is not tied to
/// a single line (e.g. a missing required key).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line, std::string key = {})
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace eplab
