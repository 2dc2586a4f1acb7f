#include "qpde/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/integrator.hpp"
#include "qpde/shifts.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

namespace {

constexpr int kRefine = 8;  // fine-grid factor for root scanning

struct Interp {
  spectral::cvec coeffs;
  int n;
  double L;
  double operator()(double x, int order = 0) const {
    return spectral::eval_interp(coeffs, n, L, x, order);
  }
};

// Root of the interpolant inside [xa, xb]: local cubic first, then a
// safeguarded Newton polish on the interpolant itself.
double refine_root(const Interp& f, double xa, double xb) {
  double fa = f(xa), fb = f(xb);
  double x = xa - fa * (xb - xa) / (fb - fa);
  // cubic through four equispaced samples spanning the cell
  const double h = xb - xa;
  const double s0 = f(xa - h), s1 = fa, s2 = fb, s3 = f(xb + h);
  // Newton in the monomial basis of the cubic fitted at {-1,0,1,2} (cell units)
  const double c0 = s1;
  const double c1 = s2 - s0 / 3.0 - s1 / 2.0 - s3 / 6.0;
  const double c2 = (s0 - 2.0 * s1 + s2) / 2.0;
  const double c3 = (s3 - 3.0 * s2 + 3.0 * s1 - s0) / 6.0;
  double tt = (x - xa) / h;
  for (int it = 0; it < 20; ++it) {
    const double p = c0 + tt * (c1 + tt * (c2 + tt * c3));
    const double dp = c1 + tt * (2.0 * c2 + tt * 3.0 * c3);
    if (std::abs(dp) < 1e-300) break;
    const double step = p / dp;
    tt -= step;
    tt = std::clamp(tt, 0.0, 1.0);
    if (std::abs(step) < 1e-15) break;
  }
  x = xa + tt * h;
  // interpolant polish with bisection safeguard
  double lo = xa, hi = xb, flo = fa;
  for (int it = 0; it < 60; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) lo = x;
    else hi = x;
    const double d1 = f(x, 1);
    double nx = (std::abs(d1) > 1e-300) ? x - fx / d1 : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-15 * std::max(1.0, std::abs(x))) return nx;
    x = nx;
  }
  return x;
}

}  // namespace

ZeroReport zero_number(const GridFunction& u, double rel_tol) {
  if (!(rel_tol > 0.0)) throw ConfigError("zero tolerance must be positive");
  const double scale = u.max_abs();
  if (scale < 1e-12)
    throw DegenerateInputError("zero_number: profile is numerically zero");

  const bool circle = u.domain() == Domain::Circle;
  // interval profiles are scanned through their reflected extension on [0, L]
  GridFunction work = circle ? u
                      : (u.domain() == Domain::IntervalNeumann ? extend_even(u) : extend_odd(u));
  const int n = work.size();
  const double L = work.length();
  const double span = circle ? L : u.length();  // count zeros on [0, span)

  const double tol = rel_tol * scale;
  const double dtol = 1e-6 * scale * (2.0 * std::numbers::pi / u.length());

  Interp f{spectral::to_coeffs(work.values()), n, L};
  const int nf = kRefine * n;
  const auto fine = spectral::resample(work.values(), nf);
  const auto fine_dx = spectral::derivative(fine, L, 1);
  const double hf = L / nf;

  const int last = circle ? nf : nf / 2;  // half circle covers the interval
  std::vector<ZeroPoint> zeros;

  // sign changes
  for (int j = 0; j < last; ++j) {
    const double va = fine[static_cast<size_t>(j)];
    const double vb = fine[static_cast<size_t>((j + 1) % nf)];
    if (va == 0.0) {
      // node exactly on a zero: classified below by the tangency scan or as a
      // crossing when the neighbours change sign
      const double prev = fine[static_cast<size_t>((j - 1 + nf) % nf)];
      if (prev * vb < 0.0) {
        const double x = j * hf;
        zeros.push_back({x, std::abs(f(x, 1)) >= dtol, 0.0});
      }
      continue;
    }
    if (va * vb < 0.0) {
      const double x = refine_root(f, j * hf, (j + 1) * hf);
      const double d1 = std::abs(f(x, 1));
      zeros.push_back({x, d1 >= dtol, std::abs(f(x))});
    }
  }

  // tangencies: local extrema of the fine samples that dip below tol without
  // changing sign
  for (int j = 0; j < last; ++j) {
    const double v = fine[static_cast<size_t>(j)];
    const double vp = fine[static_cast<size_t>((j - 1 + nf) % nf)];
    const double vn = fine[static_cast<size_t>((j + 1) % nf)];
    if (std::abs(v) < tol && std::abs(fine_dx[static_cast<size_t>(j)]) < dtol &&
        vp * vn > 0.0 && std::abs(v) <= std::abs(vp) && std::abs(v) <= std::abs(vn)) {
      zeros.push_back({j * hf, false, std::abs(v)});
    }
  }

  std::sort(zeros.begin(), zeros.end(), [](const ZeroPoint& a, const ZeroPoint& b) {
    return a.x < b.x;
  });
  // merge refined roots that collapsed to one location
  std::vector<ZeroPoint> merged;
  for (const auto& z : zeros) {
    if (!merged.empty() && std::abs(z.x - merged.back().x) < 1e-9 * L) {
      merged.back().simple = merged.back().simple && z.simple;
      continue;
    }
    merged.push_back(z);
  }

  ZeroReport rep;
  rep.zeros = std::move(merged);
  rep.count = static_cast<int>(rep.zeros.size());
  rep.tolerance_used = tol;

  // two distinct roots within one coarse cell = unresolved cluster
  const double hc = span / (circle ? u.size() : (u.size() - 1));
  for (size_t i = 1; i < rep.zeros.size(); ++i)
    if (rep.zeros[i].x - rep.zeros[i - 1].x < hc) rep.status = ZeroStatus::UnresolvedCluster;
  if (circle && rep.zeros.size() >= 2) {
    const double wrap = (rep.zeros.front().x + L) - rep.zeros.back().x;
    if (wrap < hc) rep.status = ZeroStatus::UnresolvedCluster;
  }
  return rep;
}

DifferenceTrack track_difference(const std::vector<OrbitSnapshot>& orbit1,
                                 const std::vector<OrbitSnapshot>& orbit2, double a) {
  if (orbit1.size() != orbit2.size())
    throw ConfigError("track_difference: orbits have different sample counts");
  if (orbit1.empty()) throw ConfigError("track_difference: empty orbits");
  DifferenceTrack out;
  for (size_t i = 0; i < orbit1.size(); ++i) {
    const auto& s1 = orbit1[i];
    const auto& s2 = orbit2[i];
    if (std::abs(s1.t - s2.t) > 1e-9)
      throw ConfigError("track_difference: sample times do not match");
    if (hull_distance(s1.base, s2.base) > 1e-9)
      throw ConfigError("track_difference: orbits live over different base points");
    const GridFunction shifted = (a == 0.0) ? s2.profile : shift(s2.profile, a);
    std::vector<double> diff(s1.profile.values());
    for (int j = 0; j < s1.profile.size(); ++j)
      diff[static_cast<size_t>(j)] -= shifted.values()[static_cast<size_t>(j)];
    GridFunction d(std::move(diff), s1.profile.domain(), s1.profile.length());
    out.reports.push_back(zero_number(d));
    out.times.push_back(s1.t);
  }
  return out;
}

namespace {

// Pick the witness location out of a flagged report: a multiple zero if one
// exists, otherwise the midpoint of the tightest pair of roots.
std::pair<double, std::string> witness_of(const ZeroReport& rep) {
  for (const auto& z : rep.zeros)
    if (!z.simple) return {z.x, "multiple"};
  double best_gap = 1e300, loc = 0.0;
  for (size_t i = 1; i < rep.zeros.size(); ++i) {
    const double gap = rep.zeros[i].x - rep.zeros[i - 1].x;
    if (gap < best_gap) {
      best_gap = gap;
      loc = 0.5 * (rep.zeros[i].x + rep.zeros[i - 1].x);
    }
  }
  return {loc, "cluster"};
}

}  // namespace

std::vector<DropEvent> detect_drop_events(const DifferenceTrack& track) {
  std::vector<DropEvent> events;
  const auto& reps = track.reports;
  int prev_free = -1;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    if (!reps[static_cast<size_t>(i)].witness_free()) continue;
    if (prev_free >= 0) {
      const int zb = reps[static_cast<size_t>(prev_free)].count;
      const int za = reps[static_cast<size_t>(i)].count;
      if (za < zb) {
        DropEvent ev;
        ev.t_lo = track.times[static_cast<size_t>(prev_free)];
        ev.t_hi = track.times[static_cast<size_t>(i)];
        ev.before = zb;
        ev.after = za;
        ev.witness_kind = "anomaly";
        for (int j = prev_free + 1; j < i; ++j) {
          const auto& r = reps[static_cast<size_t>(j)];
          if (r.has_witness()) {
            auto [x, kind] = witness_of(r);
            ev.witness_x = x;
            ev.witness_kind = kind;
            break;
          }
        }
        events.push_back(ev);
      }
    }
    prev_free = i;
  }
  return events;
}

std::vector<DropEvent> detect_drop_events_refined(const DifferenceTrack& track,
                                                  const std::vector<OrbitSnapshot>& orbit1,
                                                  const std::vector<OrbitSnapshot>& orbit2,
                                                  double a, const ForcingField& field,
                                                  double dt) {
  auto events = detect_drop_events(track);
  for (auto& ev : events) {
    if (ev.witness_kind != "anomaly") continue;
    // restart both orbits from the stored bracketing snapshot at dt/8
    size_t i_lo = 0;
    for (size_t i = 0; i < track.times.size(); ++i)
      if (std::abs(track.times[i] - ev.t_lo) < 1e-12) i_lo = i;
    const double horizon = ev.t_hi - ev.t_lo;
    IntegrationOptions opt;
    opt.dt = dt / 8.0;
    opt.sample_every = 1;
    opt.tail_check = false;
    auto fine1 = integrate(orbit1[i_lo].profile, orbit1[i_lo].base, field, horizon, opt);
    auto fine2 = integrate(orbit2[i_lo].profile, orbit2[i_lo].base, field, horizon, opt);
    auto fine_track = track_difference(fine1, fine2, a);
    for (size_t j = 0; j < fine_track.reports.size(); ++j) {
      if (fine_track.reports[j].has_witness()) {
        auto [x, kind] = witness_of(fine_track.reports[j]);
        ev.witness_x = x;
        ev.witness_kind = kind;
        break;
      }
    }
  }
  return events;
}

}  // namespace qpde
