#pragma once

#include "qpde/grid.hpp"

namespace qpde {

// Shift amount on the circle, reduced to [0, L).
struct ShiftAmount {
  double a = 0.0;
  static ShiftAmount reduced(double raw, double length);
};

// (sigma_a u)(x) = u(x + a). Grid-multiple shifts are exact index rotations;
// anything else goes through spectral interpolation. Circle domains only.
GridFunction shift(const GridFunction& u, double a);

// Sup norm of the trigonometric interpolant of u - sigma_a v (fine sampling
// plus a Newton polish at the argmax). Unlike the nodal max this is invariant
// under shifting both arguments, which the quotient metric needs.
double sup_norm_shifted(const GridFunction& u, const GridFunction& v, double a);

// Cheap shift-invariant lower bound on orbit_distance (Fourier magnitudes).
double orbit_distance_lower_bound(const GridFunction& u, const GridFunction& v);

// min over shifts a of ||u - sigma_a v||_inf, which by shift invariance of the
// norm equals the Hausdorff distance between the two group orbits. Coarse scan
// over n_shifts equispaced shifts, then zoomed refinement inside the best cell
// (refine = false keeps the plain grid-shift minimum). When stop_below >= 0
// the search returns early once any shift already beats that threshold; the
// returned value is then an upper bound, which is all a <=-threshold test
// needs.
double orbit_distance(const GridFunction& u, const GridFunction& v, int n_shifts = 256,
                      bool refine = true, double stop_below = -1.0);

struct PeriodResult {
  double L0 = 0.0;        // 0 when homogeneous
  bool homogeneous = false;
};

// Smallest spatial period: the largest k <= n/4 with ||u - sigma_{L/k} u||
// below tol * max|u| gives L0 = L/k; a profile within tol of its mean is
// homogeneous (L0 = 0 sentinel).
PeriodResult smallest_period(const GridFunction& u, double tol = 1e-6);

struct MaxPhase {
  double c = 0.0;             // location of the global maximum
  double value = 0.0;         // u(c)
  double second_deriv = 0.0;  // u''(c)
  bool degenerate = false;    // |u''(c)| below the curvature threshold
};

// Global maximum of the spectral interpolant, refined from the best grid node;
// ties resolve to the smallest location. Homogeneous profiles are rejected.
MaxPhase max_phase(const GridFunction& u);

}  // namespace qpde
