#include "qpde/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpde/errors.hpp"
#include "qpde/shifts.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

PhaseTrack track_phase(const std::vector<OrbitSnapshot>& snapshots) {
  if (snapshots.size() < 2) throw ConfigError("track_phase needs at least two snapshots");
  PhaseTrack out;
  const auto period = smallest_period(snapshots.front().profile);
  if (period.homogeneous)
    throw DegenerateInputError("track_phase: homogeneous profile has no phase");
  out.L0 = period.L0;

  double prev_lift = 0.0;
  for (size_t i = 0; i < snapshots.size(); ++i) {
    const auto mp = max_phase(snapshots[i].profile);
    const double raw = -mp.c;  // frame phase is minus the max location
    double lift;
    if (i == 0) {
      lift = std::fmod(raw, out.L0);
    } else {
      // choose the branch raw + k*L0 closest to the previous lift
      const double k = std::round((prev_lift - raw) / out.L0);
      lift = raw + k * out.L0;
      const double jump = std::abs(lift - prev_lift);
      if (jump >= 0.5 * out.L0 - 1e-12)
        throw NumericalError(
            "track_phase: phase jump of " + std::to_string(jump) +
            " exceeds half a period between samples; reduce sample_every");
    }
    out.times.push_back(snapshots[i].t);
    out.c_lifted.push_back(lift);
    out.degenerate.push_back(mp.degenerate);
    prev_lift = lift;
  }
  return out;
}

double compute_G(const OrbitSnapshot& snap, const ForcingField& field) {
  const auto mp = max_phase(snap.profile);
  if (mp.degenerate)
    throw DegenerateInputError("compute_G: second derivative at the maximum is degenerate");
  const auto coeffs = spectral::to_coeffs(snap.profile.values());
  const int n = snap.profile.size();
  const double L = snap.profile.length();
  const double u2 = spectral::eval_interp(coeffs, n, L, mp.c, 2);
  const double u3 = spectral::eval_interp(coeffs, n, L, mp.c, 3);
  const auto partials = field.eval_partials(snap.base, 0.0, mp.value, 0.0);
  return partials.f_p + u3 / u2;
}

ReductionResidual verify_reduction(const std::vector<OrbitSnapshot>& snapshots,
                                   const ForcingField& field) {
  const auto phase = track_phase(snapshots);
  for (bool d : phase.degenerate)
    if (d)
      throw DegenerateInputError("verify_reduction: degenerate window (u'' ~ 0 at a maximum)");
  ReductionResidual out;
  for (size_t i = 1; i + 1 < snapshots.size(); ++i) {
    const double dt_m = phase.times[i] - phase.times[i - 1];
    const double dt_p = phase.times[i + 1] - phase.times[i];
    if (std::abs(dt_p - dt_m) > 1e-9 * std::max(dt_p, dt_m))
      throw ConfigError("verify_reduction needs uniform sampling");
    const double cdot = (phase.c_lifted[i + 1] - phase.c_lifted[i - 1]) / (dt_m + dt_p);
    const double g = compute_G(snapshots[i], field);
    out.times.push_back(phase.times[i]);
    out.c.push_back(phase.c_lifted[i]);
    out.g_values.push_back(g);
    out.residual.push_back(std::abs(cdot - g));
    out.max_residual = std::max(out.max_residual, out.residual.back());
  }
  return out;
}

CriticalPoint find_common_critical_point(const std::vector<OrbitSnapshot>& snapshots,
                                         const ForcingField& field) {
  if (!field.even_in_p())
    throw ConfigError("find_common_critical_point requires an even-in-p field");
  if (snapshots.empty()) throw ConfigError("find_common_critical_point: empty sample");
  const int n = snapshots.front().profile.size();
  const int nf = 16 * n;
  std::vector<double> running_max(static_cast<size_t>(nf), 0.0);
  for (const auto& s : snapshots) {
    const auto fine = spectral::resample(s.profile.values(), nf);
    const auto dx = spectral::derivative(fine, s.profile.length(), 1);
    for (int j = 0; j < nf; ++j)
      running_max[static_cast<size_t>(j)] =
          std::max(running_max[static_cast<size_t>(j)], std::abs(dx[static_cast<size_t>(j)]));
  }
  int best = 0;
  for (int j = 1; j < nf; ++j)
    if (running_max[static_cast<size_t>(j)] < running_max[static_cast<size_t>(best)]) best = j;
  CriticalPoint out;
  out.x0 = best * snapshots.front().profile.length() / nf;
  out.residual = running_max[static_cast<size_t>(best)];
  return out;
}

ConjugacyReport evaluation_conjugacy_check(
    const std::vector<std::vector<OrbitSnapshot>>& same_return_groups, double x0) {
  ConjugacyReport out;
  out.modulus = std::numeric_limits<double>::infinity();
  int flat_base = 0;
  for (const auto& group : same_return_groups) {
    for (size_t i = 0; i < group.size(); ++i) {
      for (size_t j = i + 1; j < group.size(); ++j) {
        const auto& u = group[i].profile;
        const auto& v = group[j].profile;
        double dist = 0.0;
        for (int k = 0; k < u.size(); ++k)
          dist = std::max(dist, std::abs(u.values()[static_cast<size_t>(k)] -
                                         v.values()[static_cast<size_t>(k)]));
        if (dist < 1e-10) continue;  // same fiber point to working precision
        const auto cu = spectral::to_coeffs(u.values());
        const auto cv = spectral::to_coeffs(v.values());
        const double du = spectral::eval_interp(cu, u.size(), u.length(), x0, 0);
        const double dv = spectral::eval_interp(cv, v.size(), v.length(), x0, 0);
        const double ratio = std::abs(du - dv) / dist;
        ++out.pairs_checked;
        out.modulus = std::min(out.modulus, ratio);
        if (ratio < 1e-6)
          out.violations.emplace_back(flat_base + static_cast<int>(i),
                                      flat_base + static_cast<int>(j));
      }
    }
    flat_base += static_cast<int>(group.size());
  }
  return out;
}

}  // namespace qpde
