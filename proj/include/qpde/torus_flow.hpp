#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qpde {

// Doubly periodic vector field f(t, x) with f(t+1, x) = f(t, x+1) = f(t, x),
// given as a finite Fourier sum of cos/sin(2 pi (j t + m x)) terms.
struct TorusTerm {
  double coeff = 0.0;
  int j = 0;  // time mode
  int m = 0;  // space mode
  bool use_sin = false;
};

class TorusVectorField {
 public:
  explicit TorusVectorField(std::vector<TorusTerm> terms) : terms_(std::move(terms)) {}
  double eval(double t, double x) const;
  const std::vector<TorusTerm>& terms() const { return terms_; }

 private:
  std::vector<TorusTerm> terms_;
};

// Fixed-step RK4 on the lift of x' = f(t, x); returns x(t_end). dt <= 1e-3.
double integrate_torus_ode(const TorusVectorField& vf, double eta, double t_end, double dt);

// Time-1 lift map psi(eta) = x(1, eta).
double poincare_map(const TorusVectorField& vf, double eta, double dt = 1e-3);

// Checks psi is increasing over a sample of seeds; throws NumericalError with
// a remediation hint when monotonicity fails (dt too large / field too steep).
void verify_poincare_monotone(const TorusVectorField& vf, int n_samples = 64, double dt = 1e-3);

struct RotationResult {
  double rho = 0.0;                                // (psi^n(eta) - eta) / n
  std::vector<std::pair<long, double>> table;      // (k, rho_k) along a doubling sequence
  double seed_spread = 0.0;                        // max spread of rho_n across 3 seeds
};
RotationResult rotation_number(const TorusVectorField& vf, double eta, long n_iterates,
                               double dt = 1e-3);

enum class CircleOmegaClass { Dense, Gapped, Periodic };
std::string circle_omega_class_name(CircleOmegaClass c);

struct CircleOmega {
  std::vector<double> points;                       // iterates mod 1, sorted, at the final doubling
  CircleOmegaClass cls = CircleOmegaClass::Dense;
  std::vector<std::pair<long, double>> gap_stats;   // (n, largest gap) across doublings
  double rho = 0.0;
};

// Largest-gap scaling of {psi^k(eta) mod 1} across three doublings of the
// iterate count: dense when the gap keeps shrinking like 1/n, gapped when it
// stabilizes above a floor. Rotation numbers within 1e-9 of a rational with
// denominator <= 100 refuse the dichotomy and report Periodic.
CircleOmega omega_limit_circle(const TorusVectorField& vf, double eta, long n_iterates,
                               double dt = 1e-3);

// x' = f(t, x + rho t) - rho with a boundedness monitor.
struct DerivedRun {
  std::vector<double> times, x;
  double sup_deviation = 0.0;  // sup |x(t) - x(0)|
};
DerivedRun derived_equation(const TorusVectorField& vf, double rho, double eta, double t_end,
                            double dt = 1e-3, int sample_every = 100);

}  // namespace qpde
