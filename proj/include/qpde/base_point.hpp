#pragma once

#include <span>
#include <vector>

namespace qpde {

// Phase on the k-torus identifying one element of the forcing hull. Components
// are kept reduced to [0, 1).
struct BasePoint {
  std::vector<double> theta;

  int dim() const { return static_cast<int>(theta.size()); }
  static BasePoint reduced(std::vector<double> raw);
};

// Base flow: theta -> theta + omega * tau (mod 1).
BasePoint translate(const BasePoint& b, double tau, std::span<const double> omega);

// Max over components of the circle distance min(|d|, 1 - |d|). A metric, <= 1/2.
double hull_distance(const BasePoint& a, const BasePoint& b);

}  // namespace qpde
