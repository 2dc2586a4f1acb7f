#include "qpde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"

namespace qpde {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

bool is_interval(Domain d) { return d != Domain::Circle; }

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::Circle: return "circle";
    case Domain::IntervalNeumann: return "interval_neumann";
    case Domain::IntervalDirichlet: return "interval_dirichlet";
  }
  return "?";
}

GridFunction::GridFunction(std::vector<double> values, Domain domain, double length)
    : values_(std::move(values)), domain_(domain), length_(length) {
  const int n = static_cast<int>(values_.size());
  if (!(length_ > 0.0)) throw ConfigError("grid length must be positive");
  if (domain_ == Domain::Circle) {
    if (n < 16 || !power_of_two(n))
      throw ConfigError("circle grid size must be a power of two >= 16, got " + std::to_string(n));
  } else {
    if (n < 17 || !power_of_two(n - 1))
      throw ConfigError("interval grid needs 2^q+1 >= 17 nodes, got " + std::to_string(n));
  }
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError("grid function has nonfinite values");
  if (domain_ == Domain::IntervalDirichlet) {
    if (std::abs(values_.front()) > 1e-12 || std::abs(values_.back()) > 1e-12)
      throw ConfigError("dirichlet profile must vanish at both endpoints");
  }
}

double GridFunction::dx() const {
  const int n = static_cast<int>(values_.size());
  return domain_ == Domain::Circle ? length_ / n : length_ / (n - 1);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::mean() const {
  // trapezoid on intervals, plain average on the circle
  if (domain_ == Domain::Circle) {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / values_.size();
  }
  double s = 0.5 * (values_.front() + values_.back());
  for (size_t j = 1; j + 1 < values_.size(); ++j) s += values_[j];
  return s / (values_.size() - 1);
}

GridFunction circle_from_modes(int n, double length, double mean,
                               std::span<const double> cos_coeffs,
                               std::span<const double> sin_coeffs) {
  std::vector<double> v(static_cast<size_t>(n), mean);
  const double w = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) {
    const double x = j * length / n;
    for (size_t k = 0; k < cos_coeffs.size(); ++k)
      v[static_cast<size_t>(j)] += cos_coeffs[k] * std::cos(w * (k + 1) * x);
    for (size_t k = 0; k < sin_coeffs.size(); ++k)
      v[static_cast<size_t>(j)] += sin_coeffs[k] * std::sin(w * (k + 1) * x);
  }
  return GridFunction(std::move(v), Domain::Circle, length);
}

GridFunction interval_from_cosines(int m_plus_1, double length,
                                   std::span<const double> coeffs) {
  const int m = m_plus_1 - 1;
  std::vector<double> v(static_cast<size_t>(m_plus_1), 0.0);
  for (int j = 0; j <= m; ++j) {
    const double x = j * length / m;
    for (size_t k = 0; k < coeffs.size(); ++k)
      v[static_cast<size_t>(j)] += coeffs[k] * std::cos(k * std::numbers::pi * x / length);
  }
  return GridFunction(std::move(v), Domain::IntervalNeumann, length);
}

GridFunction interval_from_sines(int m_plus_1, double length,
                                 std::span<const double> coeffs) {
  const int m = m_plus_1 - 1;
  std::vector<double> v(static_cast<size_t>(m_plus_1), 0.0);
  for (int j = 1; j < m; ++j) {
    const double x = j * length / m;
    for (size_t k = 0; k < coeffs.size(); ++k)
      v[static_cast<size_t>(j)] += coeffs[k] * std::sin((k + 1) * std::numbers::pi * x / length);
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return GridFunction(std::move(v), Domain::IntervalDirichlet, length);
}

}  // namespace qpde
