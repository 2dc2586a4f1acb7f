#include "qpde/base_point.hpp"

#include <algorithm>
#include <cmath>

#include "qpde/errors.hpp"

namespace qpde {

namespace {
double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;  // floor rounding at the seam
  return r;
}
}  // namespace

BasePoint BasePoint::reduced(std::vector<double> raw) {
  for (double& v : raw) v = mod1(v);
  return BasePoint{std::move(raw)};
}

BasePoint translate(const BasePoint& b, double tau, std::span<const double> omega) {
  if (omega.size() != b.theta.size())
    throw ConfigError("frequency vector dimension does not match base point");
  std::vector<double> out(b.theta.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = mod1(b.theta[i] + omega[i] * tau);
  return BasePoint{std::move(out)};
}

double hull_distance(const BasePoint& a, const BasePoint& b) {
  if (a.theta.size() != b.theta.size())
    throw ConfigError("base points live on tori of different dimension");
  double d = 0.0;
  for (size_t i = 0; i < a.theta.size(); ++i) {
    double delta = std::abs(a.theta[i] - b.theta[i]);
    delta = std::min(delta, 1.0 - delta);
    d = std::max(d, delta);
  }
  return d;
}

}  // namespace qpde
