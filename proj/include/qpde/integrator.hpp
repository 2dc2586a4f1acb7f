#pragma once

#include <complex>
#include <vector>

#include "qpde/forcing.hpp"
#include "qpde/grid.hpp"

namespace qpde {

// Spatial derivative of order 1..3. Circle profiles are differentiated
// spectrally; interval profiles through their reflected extension (even for
// Neumann, odd for Dirichlet), which restricts back to the interval grid.
GridFunction spatial_derivatives(const GridFunction& u, int order);

// Even reflection of a Neumann profile on [0, L] onto the circle of
// circumference 2L, and odd reflection of a Dirichlet profile. restrict_half
// samples the half circle [0, L] back onto the interval grid.
GridFunction extend_even(const GridFunction& u);
GridFunction extend_odd(const GridFunction& u);
GridFunction restrict_half(const GridFunction& u, Domain target);

// Time stepper for u_t = u_xx + g(t, u, u_x) on the circle: exact diffusion
// propagator in Fourier space, second-order exponential Runge-Kutta for the
// nonlinearity, 3/2-rule padded evaluation of g to suppress aliasing.
class CircleStepper {
 public:
  CircleStepper(int n, double length, double dt, const ForcingField& field);

  void seed(const GridFunction& u0, const BasePoint& base, double t0 = 0.0);
  void advance();  // one dt step; throws BlowupError when the state leaves range

  // clock kept as t0 + steps * dt so long runs carry no accumulation error
  double time() const { return t0_ + static_cast<double>(steps_) * dt_; }
  double dt() const { return dt_; }
  GridFunction current() const;
  BasePoint current_base() const;
  OrbitSnapshot snapshot() const;

 private:
  void nonlinear_hat(const std::vector<std::complex<double>>& uhat, double t,
                     std::vector<std::complex<double>>& nhat);

  int n_, nf_;
  double length_, dt_, t0_ = 0.0;
  long steps_ = 0;
  const ForcingField* field_;
  BasePoint base0_;
  std::vector<std::complex<double>> uhat_, ahat_, nh_u_, nh_a_;
  std::vector<std::complex<double>> prop_, phi1_, phi2_;  // e^{z}, dt*phi1(z), dt*phi2(z)
  std::vector<std::complex<double>> fine_u_, fine_p_;
  std::vector<double> work_u_, work_p_, work_w_;
};

// Same scheme in cosine (Neumann) or sine (Dirichlet) coefficient space on
// [0, L]; the boundary condition comes from the initial profile's domain tag.
// Deliberately shares no discretization path with extend-then-circle solves.
class IntervalStepper {
 public:
  IntervalStepper(int nodes, double length, double dt, const ForcingField& field, Domain bc);

  void seed(const GridFunction& u0, const BasePoint& base, double t0 = 0.0);
  void advance();

  double time() const { return t0_ + static_cast<double>(steps_) * dt_; }
  GridFunction current() const;
  BasePoint current_base() const;
  OrbitSnapshot snapshot() const;

 private:
  std::vector<double> nonlinear_coeffs(const std::vector<double>& coeffs, double t);
  std::vector<double> nodal_values(const std::vector<double>& coeffs) const;

  int nodes_, m_;
  double length_, dt_, t0_ = 0.0;
  long steps_ = 0;
  Domain bc_;
  const ForcingField* field_;
  BasePoint base0_;
  std::vector<double> chat_;              // m+1 cosine or m-1 sine coefficients
  std::vector<double> prop_, phi1_, phi2_;
};

// Single step of the circle flow: advances the profile by dt and the base by
// translate(., dt). One-shot convenience around CircleStepper.
OrbitSnapshot step(const OrbitSnapshot& snap, const ForcingField& field, double dt);

struct IntegrationOptions {
  double dt = 1e-3;
  int sample_every = 1;
  bool tail_check = true;  // spectral-tail smoothness monitor at sample times
};

// Repeated stepping with snapshot capture every sample_every steps (the t = 0
// state included). Deterministic for identical inputs.
std::vector<OrbitSnapshot> integrate(const GridFunction& u0, const BasePoint& base,
                                     const ForcingField& field, double t_end,
                                     const IntegrationOptions& opt);

// Direct interval solve (cosine or sine collocation per the profile's tag).
std::vector<OrbitSnapshot> solve_interval(const GridFunction& u0, const BasePoint& base,
                                          const ForcingField& field, double t_end,
                                          const IntegrationOptions& opt);

// Interval solve through the reflected extension: extend, run the circle
// integrator on the 2L circle, restrict every snapshot. The independent
// counterpart to solve_interval for the equivalence cross-checks.
std::vector<OrbitSnapshot> solve_interval_via_extension(const GridFunction& u0,
                                                        const BasePoint& base,
                                                        const ForcingField& field, double t_end,
                                                        const IntegrationOptions& opt);

// Smoothness proxy: fraction of energy in the top eighth of modes must stay
// below 1e-8 once t >= 0.01. Throws ResolutionError.
void check_spectral_tail(const GridFunction& u, double t);

}  // namespace qpde
