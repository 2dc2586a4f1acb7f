#pragma once

#include <string>
#include <vector>

#include "qpde/forcing.hpp"
#include "qpde/grid.hpp"

namespace qpde {

struct ZeroPoint {
  double x = 0.0;
  bool simple = true;
  double residual = 0.0;  // |u| at the refined location
};

enum class ZeroStatus {
  Ok,
  UnresolvedCluster,  // two refined roots inside one grid cell
};

// Zero count of a profile with simple/multiple classification. A report that
// is not witness-free (a multiple zero or an unresolved cluster) marks a
// moment where the count is in transition and is exactly what the drop
// detector looks for.
struct ZeroReport {
  int count = 0;
  std::vector<ZeroPoint> zeros;
  double tolerance_used = 0.0;
  ZeroStatus status = ZeroStatus::Ok;

  bool witness_free() const {
    if (status != ZeroStatus::Ok) return false;
    for (const auto& z : zeros)
      if (!z.simple) return false;
    return true;
  }
  bool has_witness() const { return !witness_free(); }
};

// Sign changes between adjacent nodes of the 8x-refined interpolant, refined
// by a local cubic plus an interpolant polish; near-tangencies (|u| < tol,
// |u_x| < derivative tolerance at an extremum) count as one multiple zero.
// Throws DegenerateInputError when max|u| < 1e-12 (the zero function has no
// well-defined count).
ZeroReport zero_number(const GridFunction& u, double rel_tol = 1e-9);

// z(phi1(t) - sigma_a phi2(t)) along two orbits sharing times and base.
struct DifferenceTrack {
  std::vector<double> times;
  std::vector<ZeroReport> reports;
};
DifferenceTrack track_difference(const std::vector<OrbitSnapshot>& orbit1,
                                 const std::vector<OrbitSnapshot>& orbit2, double a);

struct DropEvent {
  double t_lo = 0.0, t_hi = 0.0;
  int before = 0, after = 0;
  double witness_x = 0.0;
  std::string witness_kind;  // "multiple" | "cluster" | "anomaly"
};

// Strict decreases of the count between witness-free samples, each paired
// with a flagged sample inside the bracketing interval when one exists.
std::vector<DropEvent> detect_drop_events(const DifferenceTrack& track);

// Same, but anomalous drops re-integrate the bracketing interval from the
// stored snapshots at one eighth of the orbits' integration timestep (dt),
// sampled every step, before being declared anomalies.
std::vector<DropEvent> detect_drop_events_refined(const DifferenceTrack& track,
                                                  const std::vector<OrbitSnapshot>& orbit1,
                                                  const std::vector<OrbitSnapshot>& orbit2,
                                                  double a, const ForcingField& field,
                                                  double dt);

}  // namespace qpde
