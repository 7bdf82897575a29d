#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cauchylab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range dimensions, indices, or generator counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (nonpositive radius, bad weight, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole or singular element (x = y, zero paravector, z = a).
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point closer to a contour or surface than the guard allows.
class ProximityError : public Error {
 public:
  ProximityError(const std::string& what, double distance)
      : Error(what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// Adaptive quadrature hit its panel cap before reaching the tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best, double error_estimate)
      : Error(what), best_(best), error_estimate_(error_estimate) {}
  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> best_;
  double error_estimate_;
};

/// Query point not in the support of a discrete measure.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometric input (coincident points, dependent basis).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A metric oracle that fails the triangle inequality.
class InvalidMetricError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cauchylab
