#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpde {

// Bad parameters, malformed configuration, invalid domain tags. Maps to CLI exit 4.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure while running: blow-up, resolution loss, degenerate data.
// Maps to CLI exit 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solution left the trusted range (|u| > 1e8 or nonfinite). Carries the time of
// the last finite state and a copy of its nodal values.
class BlowupError : public NumericalError {
 public:
  BlowupError(const std::string& what, double t, std::vector<double> last)
      : NumericalError(what), time(t), last_finite(std::move(last)) {}
  double time;
  std::vector<double> last_finite;
};

// Spectral tail carries too much energy for the grid to be trusted.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Input is numerically degenerate for the requested operation (identically-zero
// profile handed to a zero counter, homogeneous profile handed to a phase tracker).
class DegenerateInputError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Base-phase return sampling ended with fewer returns than required.
class InsufficientReturnsError : public NumericalError {
 public:
  InsufficientReturnsError(const std::string& what, int achieved)
      : NumericalError(what), achieved(achieved) {}
  int achieved;
};

}  // namespace qpde
