#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpde/base_point.hpp"

namespace qpde {

enum class Domain { Circle, IntervalNeumann, IntervalDirichlet };

bool is_interval(Domain d);
std::string domain_name(Domain d);

// Real profile sampled on a uniform grid.
//   Circle:   n nodes x_j = j L / n, n a power of two, n >= 16.
//   Interval: n = m+1 nodes x_j = j L / m including both endpoints, m a power
//             of two >= 16 (so the reflected extension lands on a valid circle
//             grid). Dirichlet profiles vanish at both endpoints.
class GridFunction {
 public:
  GridFunction(std::vector<double> values, Domain domain, double length);

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  Domain domain() const { return domain_; }
  double length() const { return length_; }
  int size() const { return static_cast<int>(values_.size()); }

  // Node spacing (L/n on the circle, L/m on intervals) and node coordinates.
  double dx() const;
  double node(int j) const { return j * dx(); }

  double max_abs() const;
  double mean() const;

 private:
  std::vector<double> values_;
  Domain domain_;
  double length_;
};

// One point of the skew-product orbit: profile, hull phase, time.
struct OrbitSnapshot {
  GridFunction profile;
  BasePoint base;
  double t = 0.0;
};

// Convenience builders used all over the tests and scenarios.
GridFunction circle_from_modes(int n, double length, double mean,
                               std::span<const double> cos_coeffs,
                               std::span<const double> sin_coeffs);
GridFunction interval_from_cosines(int m_plus_1, double length,
                                   std::span<const double> coeffs);
GridFunction interval_from_sines(int m_plus_1, double length,
                                 std::span<const double> coeffs);

}  // namespace qpde
