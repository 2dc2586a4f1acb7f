#pragma once

#include <vector>

#include "qpde/forcing.hpp"
#include "qpde/grid.hpp"

namespace qpde {

// Continuous lift of the frame phase c(t) defined by phi(t, .) = sigma_c u*(t, .)
// with u* normalized to have its maximum at x = 0; equivalently c(t) is minus
// the location of the profile maximum, unwrapped modulo the smallest spatial
// period L0.
struct PhaseTrack {
  std::vector<double> times;
  std::vector<double> c_lifted;
  std::vector<bool> degenerate;  // |u''| below threshold at the max
  double L0 = 0.0;
};

PhaseTrack track_phase(const std::vector<OrbitSnapshot>& snapshots);

// G(t) = f_p(t, u(c*), 0) + u'''(c*) / u''(c*) evaluated at the profile
// maximum c*. Throws DegenerateInputError when u'' at the max is below the
// curvature threshold.
double compute_G(const OrbitSnapshot& snap, const ForcingField& field);

// Central differences of the phase lift against G at matching times.
struct ReductionResidual {
  std::vector<double> times, c, g_values, residual;
  double max_residual = 0.0;
};
ReductionResidual verify_reduction(const std::vector<OrbitSnapshot>& snapshots,
                                   const ForcingField& field);

// x0 minimizing max over snapshots of |u_x(x)| on a fine grid; the residual is
// that max. Requires an even-in-p field (the hypothesis under which a common
// critical point exists); a large residual is data, not an error.
struct CriticalPoint {
  double x0 = 0.0;
  double residual = 0.0;
};
CriticalPoint find_common_critical_point(const std::vector<OrbitSnapshot>& snapshots,
                                         const ForcingField& field);

// Injectivity probe for the evaluation map u -> u(x0): every pair of distinct
// profiles taken at the same return must separate at x0. Pairs are formed
// within each group (snapshots over the same near-base).
struct ConjugacyReport {
  double modulus = 0.0;  // min over pairs of |u(x0)-v(x0)| / ||u-v||_inf; +inf sentinel when no pairs
  int pairs_checked = 0;
  std::vector<std::pair<int, int>> violations;  // flat indices into the groups
};
ConjugacyReport evaluation_conjugacy_check(
    const std::vector<std::vector<OrbitSnapshot>>& same_return_groups, double x0);

}  // namespace qpde
