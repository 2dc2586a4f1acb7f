#include "qpde/torus_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"

namespace qpde {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double rk4_span(const TorusVectorField& vf, double x0, double t0, double t1, double dt) {
  const long steps = std::lround((t1 - t0) / dt);
  const double h = (t1 - t0) / steps;
  // accumulate the increment separately so the rounding scale stays at the
  // span displacement, not at the (possibly large) lift value
  double acc = 0.0;
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const double x = x0 + acc;
    const double k1 = vf.eval(t, x);
    const double k2 = vf.eval(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = vf.eval(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = vf.eval(t + h, x + h * k3);
    acc += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x0 + acc;
}

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

// Best rational p/q with q <= qmax; returns the error.
double nearest_rational_error(double r, long qmax, long* q_out) {
  double x = std::abs(r);
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
  double best = std::abs(std::abs(r) - static_cast<double>(p1));
  if (q_out) *q_out = 1;
  for (int it = 0; it < 64; ++it) {
    const double frac = x - std::floor(x);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    const long a = static_cast<long>(std::floor(x));
    const long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax || q2 <= 0) break;
    const double err = std::abs(std::abs(r) - static_cast<double>(p2) / static_cast<double>(q2));
    if (err < best) {
      best = err;
      if (q_out) *q_out = q2;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return best;
}

double largest_gap(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  double g = 1.0 - pts.back() + pts.front();  // wraparound gap
  for (size_t i = 1; i < pts.size(); ++i) g = std::max(g, pts[i] - pts[i - 1]);
  return g;
}

}  // namespace

double TorusVectorField::eval(double t, double x) const {
  double acc = 0.0;
  for (const auto& term : terms_) {
    double phase = term.j * t + term.m * x;
    phase -= std::floor(phase);
    const double angle = two_pi * phase;
    acc += term.coeff * (term.use_sin ? std::sin(angle) : std::cos(angle));
  }
  return acc;
}

double integrate_torus_ode(const TorusVectorField& vf, double eta, double t_end, double dt) {
  if (dt > 1e-3) throw ConfigError("torus ODE integration requires dt <= 1e-3");
  if (t_end == 0.0) return eta;
  if (t_end < 0.0) {
    // the ODE is reversible; step backward with negative h
    return rk4_span(vf, eta, 0.0, t_end, -dt);
  }
  return rk4_span(vf, eta, 0.0, t_end, dt);
}

double poincare_map(const TorusVectorField& vf, double eta, double dt) {
  return rk4_span(vf, eta, 0.0, 1.0, dt);
}

void verify_poincare_monotone(const TorusVectorField& vf, int n_samples, double dt) {
  double prev = poincare_map(vf, 0.0, dt);
  for (int i = 1; i <= n_samples; ++i) {
    const double eta = static_cast<double>(i) / n_samples;
    const double cur = poincare_map(vf, eta, dt);
    if (cur <= prev)
      throw NumericalError(
          "poincare map is not monotone at eta = " + std::to_string(eta) +
          "; reduce dt or soften the vector field");
    prev = cur;
  }
}

RotationResult rotation_number(const TorusVectorField& vf, double eta, long n_iterates,
                               double dt) {
  if (n_iterates < 100) throw ConfigError("rotation_number needs n_iterates >= 100");
  RotationResult out;
  // iterate with the phase reduced mod 1 and the lift displacement kept in a
  // separate accumulator: the rotation estimate then carries no rounding from
  // a growing lift value
  auto displacement = [&](double x_start, long iters, RotationResult* table_out) {
    double x = mod1(x_start), disp = 0.0;
    long next_mark = 100;
    for (long k = 1; k <= iters; ++k) {
      const double nx = rk4_span(vf, x, 0.0, 1.0, dt);
      disp += nx - x;
      x = mod1(nx);
      if (table_out && (k == next_mark || k == iters)) {
        table_out->table.emplace_back(k, disp / static_cast<double>(k));
        if (k == next_mark) next_mark *= 2;
      }
    }
    return disp;
  };

  out.rho = displacement(eta, n_iterates, &out) / static_cast<double>(n_iterates);

  // seed independence: the rotation number belongs to the map, not the orbit
  const double seeds[2] = {mod1(eta + 0.37), mod1(eta + 0.73)};
  double lo = out.rho, hi = out.rho;
  for (double s : seeds) {
    const double r = displacement(s, n_iterates, nullptr) / static_cast<double>(n_iterates);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.seed_spread = hi - lo;
  return out;
}

std::string circle_omega_class_name(CircleOmegaClass c) {
  switch (c) {
    case CircleOmegaClass::Dense: return "dense";
    case CircleOmegaClass::Gapped: return "gapped";
    case CircleOmegaClass::Periodic: return "periodic";
  }
  return "?";
}

CircleOmega omega_limit_circle(const TorusVectorField& vf, double eta, long n_iterates,
                               double dt) {
  if (n_iterates < 10000) throw ConfigError("omega_limit_circle needs n_iterates >= 1e4");
  CircleOmega out;

  const long n_final = 8 * n_iterates;  // three doublings
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(n_final));
  double x = mod1(eta), disp = 0.0;
  long mark = n_iterates;
  for (long k = 1; k <= n_final; ++k) {
    const double nx = rk4_span(vf, x, 0.0, 1.0, dt);
    disp += nx - x;
    x = mod1(nx);
    pts.push_back(x);
    if (k == mark) {
      out.gap_stats.emplace_back(k, largest_gap(pts));
      mark *= 2;
    }
  }
  out.rho = disp / static_cast<double>(n_final);

  long q = 1;
  if (nearest_rational_error(out.rho, 100, &q) < 1e-9) {
    out.cls = CircleOmegaClass::Periodic;
    // keep one period of points
    std::vector<double> cycle(pts.begin(), pts.begin() + std::min<long>(q, n_final));
    std::sort(cycle.begin(), cycle.end());
    out.points = cycle;
    return out;
  }

  std::sort(pts.begin(), pts.end());
  out.points = pts;
  const double g0 = out.gap_stats.front().second;
  const double g3 = out.gap_stats.back().second;
  // decision rule: dense when the final gap is at the equidistribution scale
  // (n * gap <= 4) or has kept shrinking by 5x across the doublings
  const bool dense = (static_cast<double>(n_final) * g3 <= 4.0) || (g3 <= 0.2 * g0);
  out.cls = dense ? CircleOmegaClass::Dense : CircleOmegaClass::Gapped;
  return out;
}

DerivedRun derived_equation(const TorusVectorField& vf, double rho, double eta, double t_end,
                            double dt, int sample_every) {
  if (dt > 1e-3) throw ConfigError("derived equation integration requires dt <= 1e-3");
  DerivedRun out;
  const long steps = std::lround(t_end / dt);
  const double h = t_end / steps;
  double x = eta, t = 0.0;
  out.times.push_back(0.0);
  out.x.push_back(x);
  auto rhs = [&](double tt, double xx) { return vf.eval(tt, xx + rho * tt) - rho; };
  for (long s = 0; s < steps; ++s) {
    const double k1 = rhs(t, x);
    const double k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = rhs(t + h, x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (s + 1) * h;
    out.sup_deviation = std::max(out.sup_deviation, std::abs(x - eta));
    if ((s + 1) % sample_every == 0 || s + 1 == steps) {
      out.times.push_back(t);
      out.x.push_back(x);
    }
  }
  return out;
}

}  // namespace qpde
