#pragma once

#include <stdexcept>
#include <string>

namespace dpbloom {

// Invalid parameters, out-of-range elements, contract violations.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A calibration table was requested outside the regime where its
// defining formulas produce a normalized distribution.
class CalibrationError : public DomainError {
 public:
  explicit CalibrationError(const std::string& what) : DomainError(what) {}
};

// Floating-point breakdown (cancellation, lost normalization) that
// indicates the requested parameters exceed what double precision can
// support, as opposed to a caller mistake.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// File and stream failures, including unparsable input files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpbloom
