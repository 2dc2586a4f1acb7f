#include "qpde/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double kBlowupThreshold = 1e8;

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, with series fallbacks
// near z = 0 to dodge cancellation.
double phi1(double z) {
  if (std::abs(z) < 0.5) {
    double term = 1.0, acc = 0.0;
    for (int j = 1; j <= 16; ++j) {
      acc += term;        // z^{j-1}/j!
      term *= z / (j + 1);
    }
    return acc;
  }
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.8) {
    double term = 0.5, acc = 0.0;
    for (int j = 2; j <= 18; ++j) {
      acc += term;        // z^{j-2}/j!
      term *= z / (j + 1);
    }
    return acc;
  }
  return (std::expm1(z) - z) / (z * z);
}

void check_values_finite(const std::vector<double>& v, double t) {
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > kBlowupThreshold)
      throw BlowupError("solution blew up at t = " + std::to_string(t), t, v);
  }
}

}  // namespace

GridFunction spatial_derivatives(const GridFunction& u, int order) {
  if (order < 1 || order > 3) throw ConfigError("derivative order must be 1..3");
  if (u.domain() == Domain::Circle) {
    auto d = spectral::derivative(u.values(), u.length(), order);
    return GridFunction(std::move(d), Domain::Circle, u.length());
  }
  const GridFunction ext = u.domain() == Domain::IntervalNeumann ? extend_even(u) : extend_odd(u);
  auto d = spectral::derivative(ext.values(), ext.length(), order);
  GridFunction dcirc(std::move(d), Domain::Circle, ext.length());
  // the derivative flips parity, which only matters for the domain tag
  const bool even_result = (u.domain() == Domain::IntervalNeumann) == (order % 2 == 0);
  GridFunction out = restrict_half(dcirc, even_result ? Domain::IntervalNeumann
                                                      : Domain::IntervalDirichlet);
  return out;
}

GridFunction extend_even(const GridFunction& u) {
  if (u.domain() != Domain::IntervalNeumann)
    throw ConfigError("extend_even expects an interval_neumann profile");
  const int m = u.size() - 1;
  std::vector<double> v(static_cast<size_t>(2 * m));
  for (int j = 0; j <= m; ++j) v[static_cast<size_t>(j)] = u.values()[static_cast<size_t>(j)];
  for (int j = 1; j < m; ++j)
    v[static_cast<size_t>(2 * m - j)] = u.values()[static_cast<size_t>(j)];
  return GridFunction(std::move(v), Domain::Circle, 2.0 * u.length());
}

GridFunction extend_odd(const GridFunction& u) {
  if (u.domain() != Domain::IntervalDirichlet)
    throw ConfigError("extend_odd expects an interval_dirichlet profile");
  if (std::abs(u.values().front()) > 1e-10 || std::abs(u.values().back()) > 1e-10)
    throw ConfigError("odd extension requires endpoint values below 1e-10");
  const int m = u.size() - 1;
  std::vector<double> v(static_cast<size_t>(2 * m), 0.0);
  for (int j = 1; j < m; ++j) {
    v[static_cast<size_t>(j)] = u.values()[static_cast<size_t>(j)];
    v[static_cast<size_t>(2 * m - j)] = -u.values()[static_cast<size_t>(j)];
  }
  return GridFunction(std::move(v), Domain::Circle, 2.0 * u.length());
}

GridFunction restrict_half(const GridFunction& u, Domain target) {
  if (u.domain() != Domain::Circle) throw ConfigError("restrict_half expects a circle profile");
  if (!is_interval(target)) throw ConfigError("restrict target must be an interval domain");
  const int n = u.size();
  const int m = n / 2;
  std::vector<double> v(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) v[static_cast<size_t>(j)] = u.values()[static_cast<size_t>(j)];
  if (target == Domain::IntervalDirichlet) {
    // snap roundoff-level endpoint residue so the invariant holds exactly
    if (std::abs(v.front()) < 1e-10) v.front() = 0.0;
    if (std::abs(v.back()) < 1e-10) v.back() = 0.0;
  }
  return GridFunction(std::move(v), target, 0.5 * u.length());
}

void check_spectral_tail(const GridFunction& u, double t) {
  if (t < 0.01) return;
  std::span<const double> vals(u.values());
  double frac = 0.0;
  if (u.domain() == Domain::Circle) {
    frac = spectral::tail_energy_fraction(vals);
  } else {
    const GridFunction ext =
        u.domain() == Domain::IntervalNeumann ? extend_even(u) : extend_odd(u);
    frac = spectral::tail_energy_fraction(ext.values());
  }
  if (frac > 1e-8)
    throw ResolutionError("spectral tail carries " + std::to_string(frac) +
                          " of the energy at t = " + std::to_string(t) +
                          "; increase the grid size");
}

// --- CircleStepper ---------------------------------------------------------

CircleStepper::CircleStepper(int n, double length, double dt, const ForcingField& field)
    : n_(n), nf_(3 * n / 2), length_(length), dt_(dt), field_(&field) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const int half = n_ / 2;
  prop_.resize(static_cast<size_t>(half) + 1);
  phi1_.resize(static_cast<size_t>(half) + 1);
  phi2_.resize(static_cast<size_t>(half) + 1);
  for (int k = 0; k <= half; ++k) {
    const double w = two_pi * k / length_;
    const double z = -w * w * dt_;
    prop_[static_cast<size_t>(k)] = std::exp(z);
    phi1_[static_cast<size_t>(k)] = dt_ * phi1(z);
    phi2_[static_cast<size_t>(k)] = dt_ * phi2(z);
  }
  uhat_.resize(static_cast<size_t>(half) + 1);
  ahat_.resize(uhat_.size());
  nh_u_.resize(uhat_.size());
  nh_a_.resize(uhat_.size());
  fine_u_.resize(static_cast<size_t>(nf_) / 2 + 1);
  fine_p_.resize(fine_u_.size());
  work_u_.resize(static_cast<size_t>(nf_));
  work_p_.resize(static_cast<size_t>(nf_));
  work_w_.resize(static_cast<size_t>(nf_));
}

void CircleStepper::seed(const GridFunction& u0, const BasePoint& base, double t0) {
  if (u0.domain() != Domain::Circle) throw ConfigError("circle stepper needs a circle profile");
  if (u0.size() != n_ || u0.length() != length_)
    throw ConfigError("profile grid does not match stepper");
  uhat_ = spectral::to_coeffs(u0.values());
  base0_ = base;
  t0_ = t0;
  steps_ = 0;
}

void CircleStepper::nonlinear_hat(const std::vector<std::complex<double>>& uhat, double t,
                                  std::vector<std::complex<double>>& nhat) {
  const int half = n_ / 2;
  // zero-padded spectra of u and u_x on the 3/2 grid
  std::fill(fine_u_.begin(), fine_u_.end(), std::complex<double>(0.0));
  std::fill(fine_p_.begin(), fine_p_.end(), std::complex<double>(0.0));
  for (int k = 0; k < half; ++k) {
    const double w = two_pi * k / length_;
    fine_u_[static_cast<size_t>(k)] = uhat[static_cast<size_t>(k)];
    fine_p_[static_cast<size_t>(k)] = uhat[static_cast<size_t>(k)] * std::complex<double>(0.0, w);
  }
  fine_u_[static_cast<size_t>(half)] = uhat[static_cast<size_t>(half)] * 0.5;
  // u_x of the Nyquist cosine vanishes on the coarse nodes; keep it zero here too

  work_u_ = spectral::from_coeffs(fine_u_, nf_);
  work_p_ = spectral::from_coeffs(fine_p_, nf_);
  check_values_finite(work_u_, t);

  for (int j = 0; j < nf_; ++j)
    work_w_[static_cast<size_t>(j)] =
        field_->eval(base0_, t, work_u_[static_cast<size_t>(j)], work_p_[static_cast<size_t>(j)]);

  auto what = spectral::to_coeffs(work_w_);
  for (int k = 0; k < half; ++k) nhat[static_cast<size_t>(k)] = what[static_cast<size_t>(k)];
  // the coarse Nyquist is an ordinary (alias-free) mode of the padded grid
  nhat[static_cast<size_t>(half)] = {2.0 * what[static_cast<size_t>(half)].real(), 0.0};
}

void CircleStepper::advance() {
  const size_t nb = uhat_.size();
  const double t_now = time();
  nonlinear_hat(uhat_, t_now, nh_u_);
  for (size_t k = 0; k < nb; ++k) ahat_[k] = prop_[k] * uhat_[k] + phi1_[k] * nh_u_[k];
  nonlinear_hat(ahat_, t_now + dt_, nh_a_);
  for (size_t k = 0; k < nb; ++k) uhat_[k] = ahat_[k] + phi2_[k] * (nh_a_[k] - nh_u_[k]);
  ++steps_;
}

GridFunction CircleStepper::current() const {
  auto v = spectral::from_coeffs(uhat_, n_);
  check_values_finite(v, time());
  return GridFunction(std::move(v), Domain::Circle, length_);
}

BasePoint CircleStepper::current_base() const { return field_->translate(base0_, time()); }

OrbitSnapshot CircleStepper::snapshot() const { return {current(), current_base(), time()}; }

// --- IntervalStepper ---------------------------------------------------------

IntervalStepper::IntervalStepper(int nodes, double length, double dt, const ForcingField& field,
                                 Domain bc)
    : nodes_(nodes), m_(nodes - 1), length_(length), dt_(dt), bc_(bc), field_(&field) {
  if (!is_interval(bc)) throw ConfigError("interval stepper needs an interval boundary condition");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const int ncoef = bc_ == Domain::IntervalNeumann ? m_ + 1 : m_ - 1;
  prop_.resize(static_cast<size_t>(ncoef));
  phi1_.resize(static_cast<size_t>(ncoef));
  phi2_.resize(static_cast<size_t>(ncoef));
  for (int i = 0; i < ncoef; ++i) {
    const int k = bc_ == Domain::IntervalNeumann ? i : i + 1;
    const double w = std::numbers::pi * k / length_;
    const double z = -w * w * dt_;
    prop_[static_cast<size_t>(i)] = std::exp(z);
    phi1_[static_cast<size_t>(i)] = dt_ * phi1(z);
    phi2_[static_cast<size_t>(i)] = dt_ * phi2(z);
  }
  chat_.resize(static_cast<size_t>(ncoef), 0.0);
}

void IntervalStepper::seed(const GridFunction& u0, const BasePoint& base, double t0) {
  if (u0.domain() != bc_) throw ConfigError("profile boundary tag does not match stepper");
  if (u0.size() != nodes_ || u0.length() != length_)
    throw ConfigError("profile grid does not match stepper");
  if (bc_ == Domain::IntervalNeumann) {
    chat_ = spectral::dct1_coeffs(u0.values());
  } else {
    std::span<const double> vals(u0.values());
    chat_ = spectral::dst1_coeffs(vals.subspan(1, static_cast<size_t>(m_ - 1)));
  }
  base0_ = base;
  t0_ = t0;
  steps_ = 0;
}

std::vector<double> IntervalStepper::nodal_values(const std::vector<double>& coeffs) const {
  if (bc_ == Domain::IntervalNeumann) return spectral::dct1_values(coeffs);
  std::vector<double> v(static_cast<size_t>(nodes_), 0.0);
  auto interior = spectral::dst1_values(coeffs);
  std::copy(interior.begin(), interior.end(), v.begin() + 1);
  return v;
}

std::vector<double> IntervalStepper::nonlinear_coeffs(const std::vector<double>& coeffs,
                                                      double t) {
  const auto u = nodal_values(coeffs);
  check_values_finite(u, t);

  std::vector<double> ux(static_cast<size_t>(nodes_), 0.0);
  if (bc_ == Domain::IntervalNeumann) {
    // derivative of a cosine series is a sine series on the interior nodes
    std::vector<double> sc(static_cast<size_t>(m_ - 1));
    for (int k = 1; k < m_; ++k)
      sc[static_cast<size_t>(k - 1)] = -coeffs[static_cast<size_t>(k)] * std::numbers::pi * k / length_;
    auto interior = spectral::dst1_values(sc);
    std::copy(interior.begin(), interior.end(), ux.begin() + 1);
  } else {
    // derivative of a sine series is a cosine series on all nodes
    std::vector<double> cc(static_cast<size_t>(m_) + 1, 0.0);
    for (int k = 1; k < m_; ++k)
      cc[static_cast<size_t>(k)] = coeffs[static_cast<size_t>(k - 1)] * std::numbers::pi * k / length_;
    ux = spectral::dct1_values(cc);
  }

  std::vector<double> w(static_cast<size_t>(nodes_));
  for (int j = 0; j < nodes_; ++j)
    w[static_cast<size_t>(j)] =
        field_->eval(base0_, t, u[static_cast<size_t>(j)], ux[static_cast<size_t>(j)]);

  if (bc_ == Domain::IntervalNeumann) return spectral::dct1_coeffs(w);
  std::span<const double> ws(w);
  return spectral::dst1_coeffs(ws.subspan(1, static_cast<size_t>(m_ - 1)));
}

void IntervalStepper::advance() {
  const double t_now = time();
  const auto n_u = nonlinear_coeffs(chat_, t_now);
  std::vector<double> a(chat_.size());
  for (size_t k = 0; k < chat_.size(); ++k)
    a[k] = prop_[k] * chat_[k] + phi1_[k] * n_u[k];
  const auto n_a = nonlinear_coeffs(a, t_now + dt_);
  for (size_t k = 0; k < chat_.size(); ++k)
    chat_[k] = a[k] + phi2_[k] * (n_a[k] - n_u[k]);
  ++steps_;
}

GridFunction IntervalStepper::current() const {
  auto v = nodal_values(chat_);
  check_values_finite(v, time());
  if (bc_ == Domain::IntervalDirichlet) {
    v.front() = 0.0;
    v.back() = 0.0;
  }
  return GridFunction(std::move(v), bc_, length_);
}

BasePoint IntervalStepper::current_base() const { return field_->translate(base0_, time()); }

OrbitSnapshot IntervalStepper::snapshot() const { return {current(), current_base(), time()}; }

// --- drivers ----------------------------------------------------------------

namespace {

template <typename Stepper>
std::vector<OrbitSnapshot> run(Stepper& st, double t_end, const IntegrationOptions& opt) {
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  const long steps = std::lround(t_end / opt.dt);
  std::vector<OrbitSnapshot> out;
  out.reserve(static_cast<size_t>(steps / std::max(1, opt.sample_every)) + 2);
  out.push_back(st.snapshot());
  for (long s = 1; s <= steps; ++s) {
    st.advance();
    if (s % opt.sample_every == 0 || s == steps) {
      out.push_back(st.snapshot());
      if (opt.tail_check) check_spectral_tail(out.back().profile, out.back().t);
    }
  }
  return out;
}

}  // namespace

OrbitSnapshot step(const OrbitSnapshot& snap, const ForcingField& field, double dt) {
  CircleStepper st(snap.profile.size(), snap.profile.length(), dt, field);
  st.seed(snap.profile, snap.base, snap.t);
  st.advance();
  return st.snapshot();
}

std::vector<OrbitSnapshot> integrate(const GridFunction& u0, const BasePoint& base,
                                     const ForcingField& field, double t_end,
                                     const IntegrationOptions& opt) {
  CircleStepper st(u0.size(), u0.length(), opt.dt, field);
  st.seed(u0, base);
  return run(st, t_end, opt);
}

std::vector<OrbitSnapshot> solve_interval(const GridFunction& u0, const BasePoint& base,
                                          const ForcingField& field, double t_end,
                                          const IntegrationOptions& opt) {
  IntervalStepper st(u0.size(), u0.length(), opt.dt, field, u0.domain());
  st.seed(u0, base);
  return run(st, t_end, opt);
}

std::vector<OrbitSnapshot> solve_interval_via_extension(const GridFunction& u0,
                                                        const BasePoint& base,
                                                        const ForcingField& field, double t_end,
                                                        const IntegrationOptions& opt) {
  const Domain bc = u0.domain();
  const GridFunction ext = bc == Domain::IntervalNeumann ? extend_even(u0) : extend_odd(u0);
  auto snaps = integrate(ext, base, field, t_end, opt);
  std::vector<OrbitSnapshot> out;
  out.reserve(snaps.size());
  for (auto& s : snaps)
    out.push_back({restrict_half(s.profile, bc), s.base, s.t});
  return out;
}

}  // namespace qpde
