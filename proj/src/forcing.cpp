#include "qpde/forcing.hpp"

#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"

namespace qpde {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool factor_even_in_p(UPFactor f) {
  return f != UPFactor::P && f != UPFactor::UP;
}

bool factor_odd_in_u(UPFactor f) {
  switch (f) {
    case UPFactor::U:
    case UPFactor::U3:
    case UPFactor::UP:
    case UPFactor::SinBU:
      return true;
    default:
      return false;
  }
}

bool factor_vanishes_at_u0(UPFactor f) {
  switch (f) {
    case UPFactor::One:
    case UPFactor::P:
    case UPFactor::P2:
    case UPFactor::CosBU:
      return false;
    default:
      return true;
  }
}

// Best rational approximation p/q with q <= qmax, by continued fractions.
double best_rational_error(double r, long qmax) {
  r = std::abs(r);
  double x = r;
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
  double best = std::abs(r - static_cast<double>(p1));
  for (int it = 0; it < 64; ++it) {
    double frac = x - std::floor(x);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    long a = static_cast<long>(std::floor(x));
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax || q2 <= 0) break;
    best = std::min(best, std::abs(r - static_cast<double>(p2) / static_cast<double>(q2)));
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return best;
}

}  // namespace

UPFactor up_factor_from_name(const std::string& name) {
  if (name == "one") return UPFactor::One;
  if (name == "u") return UPFactor::U;
  if (name == "u2") return UPFactor::U2;
  if (name == "u3") return UPFactor::U3;
  if (name == "p") return UPFactor::P;
  if (name == "p2") return UPFactor::P2;
  if (name == "up") return UPFactor::UP;
  if (name == "sin_bu") return UPFactor::SinBU;
  if (name == "cos_bu") return UPFactor::CosBU;
  throw ConfigError("unknown forcing factor '" + name + "'");
}

std::string up_factor_name(UPFactor f) {
  switch (f) {
    case UPFactor::One: return "one";
    case UPFactor::U: return "u";
    case UPFactor::U2: return "u2";
    case UPFactor::U3: return "u3";
    case UPFactor::P: return "p";
    case UPFactor::P2: return "p2";
    case UPFactor::UP: return "up";
    case UPFactor::SinBU: return "sin_bu";
    case UPFactor::CosBU: return "cos_bu";
  }
  return "?";
}

ForcingField::ForcingField(std::vector<double> omega, std::vector<ForcingTerm> terms,
                           bool even_in_p, bool odd_in_u, bool zero_at_u0)
    : omega_(std::move(omega)),
      terms_(std::move(terms)),
      even_in_p_(even_in_p),
      odd_in_u_(odd_in_u),
      zero_at_u0_(zero_at_u0) {
  if (omega_.empty()) throw ConfigError("forcing needs at least one frequency");
  for (double w : omega_)
    if (w == 0.0 || !std::isfinite(w)) throw ConfigError("forcing frequencies must be nonzero");
  for (const auto& t : terms_) {
    if (t.mode.size() != omega_.size())
      throw ConfigError("forcing term mode dimension does not match frequency vector");
    if (even_in_p_ && !factor_even_in_p(t.factor))
      throw ConfigError("even_in_p forbids factor '" + up_factor_name(t.factor) + "'");
    if (odd_in_u_ && !factor_odd_in_u(t.factor))
      throw ConfigError("odd_in_u forbids factor '" + up_factor_name(t.factor) + "'");
    if (zero_at_u0_ && !factor_vanishes_at_u0(t.factor))
      throw ConfigError("zero_at_u0 forbids factor '" + up_factor_name(t.factor) + "'");
  }
  // Heuristic irrationality check: warn when a frequency ratio sits within
  // 1e-9 of a rational with denominator <= 1000.
  for (size_t i = 0; i < omega_.size(); ++i)
    for (size_t j = i + 1; j < omega_.size(); ++j) {
      const double err = best_rational_error(omega_[i] / omega_[j], 1000);
      if (err < 1e-9)
        warnings_.push_back("frequency ratio omega_" + std::to_string(i + 1) + "/omega_" +
                            std::to_string(j + 1) + " is within 1e-9 of a small rational");
    }
}

namespace {
// Per-component mod-1 reduction before the integer mode multiplies keeps the
// trig argument small, so the cocycle identity holds to ~1e-13.
double torus_phase(const ForcingTerm& term, const std::vector<double>& omega,
                   const BasePoint& base, double t) {
  double phase = 0.0;
  for (size_t i = 0; i < omega.size(); ++i) {
    double comp = base.theta[i] + omega[i] * t;
    comp -= std::floor(comp);
    phase += term.mode[i] * comp;
  }
  phase -= std::floor(phase);
  return phase;
}
}  // namespace

double ForcingField::eval(const BasePoint& base, double t, double u, double p) const {
  if (base.dim() != dim()) throw ConfigError("base point dimension does not match forcing");
  double acc = 0.0;
  for (const auto& term : terms_) {
    const double phase = torus_phase(term, omega_, base, t);
    const double angle = two_pi * phase;
    const double trig = term.use_sin ? std::sin(angle) : std::cos(angle);
    double fac = 0.0;
    switch (term.factor) {
      case UPFactor::One: fac = 1.0; break;
      case UPFactor::U: fac = u; break;
      case UPFactor::U2: fac = u * u; break;
      case UPFactor::U3: fac = u * u * u; break;
      case UPFactor::P: fac = p; break;
      case UPFactor::P2: fac = p * p; break;
      case UPFactor::UP: fac = u * p; break;
      case UPFactor::SinBU: fac = std::sin(term.beta * u); break;
      case UPFactor::CosBU: fac = std::cos(term.beta * u); break;
    }
    acc += term.coeff * trig * fac;
  }
  return acc;
}

ForcingField::Partials ForcingField::eval_partials(const BasePoint& base, double t, double u,
                                                   double p) const {
  if (base.dim() != dim()) throw ConfigError("base point dimension does not match forcing");
  double fu = 0.0, fp = 0.0;
  for (const auto& term : terms_) {
    const double phase = torus_phase(term, omega_, base, t);
    const double angle = two_pi * phase;
    const double trig = term.use_sin ? std::sin(angle) : std::cos(angle);
    double du = 0.0, dp = 0.0;
    switch (term.factor) {
      case UPFactor::One: break;
      case UPFactor::U: du = 1.0; break;
      case UPFactor::U2: du = 2.0 * u; break;
      case UPFactor::U3: du = 3.0 * u * u; break;
      case UPFactor::P: dp = 1.0; break;
      case UPFactor::P2: dp = 2.0 * p; break;
      case UPFactor::UP: du = p; dp = u; break;
      case UPFactor::SinBU: du = term.beta * std::cos(term.beta * u); break;
      case UPFactor::CosBU: du = -term.beta * std::sin(term.beta * u); break;
    }
    fu += term.coeff * trig * du;
    fp += term.coeff * trig * dp;
  }
  return {fu, fp};
}

AlmostPeriodScan almost_period_scan(std::span<const double> series, double dt, double eps) {
  const int n = static_cast<int>(series.size());
  if (n < 10) throw DegenerateInputError("almost-period scan needs at least 10 samples");
  if (!(eps > 0.0)) throw ConfigError("almost-period tolerance must be positive");
  AlmostPeriodScan out;
  const int max_lag = n / 2;  // keep at least half the series as overlap
  for (int lag = 1; lag <= max_lag; ++lag) {
    double sup = 0.0;
    for (int i = 0; i + lag < n; ++i) {
      const double d = std::abs(series[static_cast<size_t>(i + lag)] - series[static_cast<size_t>(i)]);
      if (d > sup) sup = d;
      if (sup >= eps) break;
    }
    if (sup < eps) out.lags.push_back(lag * dt);
  }
  if (out.lags.size() >= 2) {
    double maxg = 0.0, sum = 0.0;
    for (size_t i = 1; i < out.lags.size(); ++i) {
      const double g = out.lags[i] - out.lags[i - 1];
      maxg = std::max(maxg, g);
      sum += g;
    }
    out.max_gap = maxg;
    out.mean_gap = sum / (out.lags.size() - 1);
  } else {
    out.max_gap = max_lag * dt;  // nothing (or one lag) found: gap spans the scan
    out.mean_gap = out.max_gap;
  }
  return out;
}

}  // namespace qpde
