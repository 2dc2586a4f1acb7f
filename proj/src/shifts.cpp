#include "qpde/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

namespace {

double mod_len(double a, double length) {
  double r = std::fmod(a, length);
  if (r < 0.0) r += length;
  if (r >= length) r -= length;
  return r;
}

// Sup of |interpolant of cw| over the circle: 4x fine node scan, then a Newton
// polish on the strongest local maxima that could still be the global one
// given the sampling deficit bound (h^2/8) * max|w''|.
double interp_sup(const spectral::cvec& cw, int n, double L) {
  const int nf = 4 * n;
  thread_local spectral::cvec fine;
  thread_local std::vector<double> w;
  fine.assign(static_cast<size_t>(nf) / 2 + 1, 0.0);
  const int half = n / 2;
  for (int k = 0; k < half; ++k) fine[static_cast<size_t>(k)] = cw[static_cast<size_t>(k)];
  fine[static_cast<size_t>(half)] = cw[static_cast<size_t>(half)] * 0.5;
  spectral::from_coeffs_into(fine, nf, w);
  double best = 0.0;
  for (int j = 0; j < nf; ++j) best = std::max(best, std::abs(w[static_cast<size_t>(j)]));

  double curv_bound = 0.0;
  for (int k = 1; k <= half; ++k) {
    const double wk = 2.0 * std::numbers::pi * k / L;
    curv_bound += 2.0 * std::abs(cw[static_cast<size_t>(k)]) * wk * wk;
  }
  const double hf = L / nf;
  const double margin = hf * hf / 8.0 * curv_bound;

  // strongest candidates first; a band-limited interpolant has at most n/2
  // genuine peaks, eight of them near the global level is already generous
  thread_local std::vector<std::pair<double, int>> cands;
  cands.clear();
  for (int j = 0; j < nf; ++j) {
    const double av = std::abs(w[static_cast<size_t>(j)]);
    const double ap = std::abs(w[static_cast<size_t>((j - 1 + nf) % nf)]);
    const double an = std::abs(w[static_cast<size_t>((j + 1) % nf)]);
    if (av < best - margin || av < ap || av < an) continue;
    cands.emplace_back(-av, j);
  }
  std::sort(cands.begin(), cands.end());
  if (cands.size() > 8) cands.resize(8);

  double sup = best;
  for (const auto& [neg, j] : cands) {
    double x = j * hf;
    double v0 = 0.0, d1 = 0.0, d2 = 0.0;
    for (int it = 0; it < 8; ++it) {
      spectral::eval_interp_jet(cw, n, L, x, &v0, &d1, &d2);
      if (std::abs(d2) < 1e-300) break;
      double step = -d1 / d2;
      step = std::clamp(step, -hf, hf);
      x += step;
      if (std::abs(step) < 1e-15 * L) break;
    }
    spectral::eval_interp_jet(cw, n, L, x, &v0, nullptr, nullptr);
    sup = std::max(sup, std::abs(v0));
  }
  return sup;
}

double sup_diff_coeffs(const spectral::cvec& cu, spectral::cvec cv, int n, double L, double a) {
  spectral::shift_coeffs(cv, n, L, a);
  for (size_t k = 0; k < cv.size(); ++k) cv[k] = cu[k] - cv[k];
  return interp_sup(cv, n, L);
}

}  // namespace

ShiftAmount ShiftAmount::reduced(double raw, double length) {
  return ShiftAmount{mod_len(raw, length)};
}

GridFunction shift(const GridFunction& u, double a) {
  if (u.domain() != Domain::Circle)
    throw ConfigError("the shift action is defined on circle domains only");
  const int n = u.size();
  const double L = u.length();
  a = mod_len(a, L);
  const double cells = a * n / L;
  const double nearest = std::round(cells);
  if (std::abs(cells - nearest) < 1e-12 * n) {
    const int r = static_cast<int>(nearest) % n;
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      v[static_cast<size_t>(j)] = u.values()[static_cast<size_t>((j + r) % n)];
    return GridFunction(std::move(v), Domain::Circle, L);
  }
  auto c = spectral::to_coeffs(u.values());
  spectral::shift_coeffs(c, n, L, a);
  return GridFunction(spectral::from_coeffs(c, n), Domain::Circle, L);
}

double sup_norm_shifted(const GridFunction& u, const GridFunction& v, double a) {
  if (u.domain() != Domain::Circle || v.domain() != Domain::Circle)
    throw ConfigError("sup_norm_shifted expects circle profiles");
  const auto cu = spectral::to_coeffs(u.values());
  const auto cv = spectral::to_coeffs(v.values());
  return sup_diff_coeffs(cu, cv, u.size(), u.length(), a);
}

double orbit_distance_lower_bound(const GridFunction& u, const GridFunction& v) {
  // each Fourier magnitude is shift-invariant and |c_k(w)| <= ||w||_inf
  const auto cu = spectral::to_coeffs(u.values());
  const auto cv = spectral::to_coeffs(v.values());
  double bound = std::abs(cu[0].real() - cv[0].real());
  for (size_t k = 1; k < cu.size(); ++k)
    bound = std::max(bound, std::abs(std::abs(cu[k]) - std::abs(cv[k])));
  return bound;
}

double orbit_distance(const GridFunction& u, const GridFunction& v, int n_shifts, bool refine,
                      double stop_below) {
  if (u.domain() != Domain::Circle || v.domain() != Domain::Circle)
    throw ConfigError("orbit_distance expects circle profiles");
  if (u.size() != v.size() || u.length() != v.length())
    throw ConfigError("orbit_distance expects matching grids");
  const double L = u.length();
  const int n = u.size();
  // shifts act trivially on homogeneous profiles
  const double scale = std::max({1.0, u.max_abs(), v.max_abs()});
  double dev_u = 0.0, dev_v = 0.0;
  const double mu = u.mean(), mv = v.mean();
  for (double x : u.values()) dev_u = std::max(dev_u, std::abs(x - mu));
  for (double x : v.values()) dev_v = std::max(dev_v, std::abs(x - mv));
  if (dev_u < 1e-13 * scale && dev_v < 1e-13 * scale) return std::abs(mu - mv);

  const auto cu = spectral::to_coeffs(u.values());
  const auto cv = spectral::to_coeffs(v.values());
  auto d_at = [&](double a) { return sup_diff_coeffs(cu, cv, n, L, a); };

  double best = 1e300, best_a = 0.0;
  for (int s = 0; s < n_shifts; ++s) {
    const double a = s * L / n_shifts;
    const double d = d_at(a);
    if (d < best) {
      best = d;
      best_a = a;
      if (best <= stop_below) return best;  // upper bound suffices for the caller
    }
  }
  if (!refine) return best;
  // zoomed grid scans inside the bracketing cells; a sup-norm landscape has
  // kinks, so plain scanning beats golden-section basin games
  double lo = best_a - L / n_shifts, hi = best_a + L / n_shifts;
  for (int level = 0; level < 5; ++level) {
    const int pts = 64;
    double lbest = 1e300, lbest_a = lo;
    for (int s = 0; s <= pts; ++s) {
      const double a = lo + (hi - lo) * s / pts;
      const double d = d_at(a);
      if (d < lbest) {
        lbest = d;
        lbest_a = a;
      }
    }
    best = std::min(best, lbest);
    if (best <= stop_below) return best;
    const double cell = (hi - lo) / pts;
    lo = lbest_a - cell;
    hi = lbest_a + cell;
  }
  return best;
}

PeriodResult smallest_period(const GridFunction& u, double tol) {
  if (u.domain() != Domain::Circle) throw ConfigError("smallest_period expects a circle profile");
  const double scale = u.max_abs();
  const double mean = u.mean();
  double dev = 0.0;
  for (double v : u.values()) dev = std::max(dev, std::abs(v - mean));
  if (dev < tol) return {0.0, true};
  const int kmax = u.size() / 4;
  for (int k = kmax; k >= 2; --k) {
    const double d = sup_norm_shifted(u, u, u.length() / k);
    if (d < tol * scale) return {u.length() / k, false};
  }
  return {u.length(), false};
}

MaxPhase max_phase(const GridFunction& u) {
  if (u.domain() != Domain::Circle) throw ConfigError("max_phase expects a circle profile");
  const int n = u.size();
  const double L = u.length();
  const double scale = u.max_abs();
  const double mean = u.mean();
  double dev = 0.0;
  for (double v : u.values()) dev = std::max(dev, std::abs(v - mean));
  if (dev < 1e-12 * std::max(1.0, scale))
    throw DegenerateInputError("max_phase: profile is spatially homogeneous");

  auto coeffs = spectral::to_coeffs(u.values());
  auto val = [&](double x, int order) { return spectral::eval_interp(coeffs, n, L, x, order); };

  // candidate nodes within the tie threshold of the grid maximum
  double grid_max = -1e300;
  for (double v : u.values()) grid_max = std::max(grid_max, v);
  const double tie = 1e-10 * std::max(1.0, scale);

  double best_val = -1e300, best_c = 0.0, best_dd = 0.0;
  std::vector<double> cands;
  for (int j = 0; j < n; ++j)
    if (u.values()[static_cast<size_t>(j)] >= grid_max - std::max(tie, 1e-9 * scale))
      cands.push_back(j * L / n);

  auto reduce_loc = [&](double c) {
    double r = mod_len(c, L);
    if (r >= L * (1.0 - 1e-12)) r = 0.0;  // seam representative
    return r;
  };
  for (double c0 : cands) {
    // Newton on u'(x) = 0, safeguarded to stay within one cell of the seed
    double c = c0;
    for (int it = 0; it < 40; ++it) {
      const double d1 = val(c, 1);
      const double d2 = val(c, 2);
      if (std::abs(d2) < 1e-14 * scale) break;
      double step = -d1 / d2;
      const double cap = L / n;
      if (step > cap) step = cap;
      if (step < -cap) step = -cap;
      c += step;
      if (std::abs(step) < 1e-14 * L) break;
    }
    const double vc = val(c, 0);
    if (vc > best_val + tie) {
      best_val = vc;
      best_c = reduce_loc(c);
      best_dd = val(c, 2);
    } else if (vc > best_val - tie) {
      const double cm = reduce_loc(c);
      if (cm < best_c) {
        best_c = cm;
        best_val = std::max(best_val, vc);
        best_dd = val(c, 2);
      }
    }
  }

  MaxPhase out;
  out.c = best_c;
  out.value = best_val;
  out.second_deriv = best_dd;
  const double w = 2.0 * std::numbers::pi / L;
  out.degenerate = std::abs(best_dd) < 1e-10 * scale * w * w;
  return out;
}

}  // namespace qpde
