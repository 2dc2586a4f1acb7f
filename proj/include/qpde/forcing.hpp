#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpde/base_point.hpp"

namespace qpde {

// The (u, p) factor of one forcing term. A closed symbolic family so that
// partial derivatives are exact.
enum class UPFactor { One, U, U2, U3, P, P2, UP, SinBU, CosBU };

UPFactor up_factor_from_name(const std::string& name);
std::string up_factor_name(UPFactor f);

struct ForcingTerm {
  double coeff = 0.0;
  std::vector<int> mode;  // torus mode, one integer per frequency
  bool use_sin = false;   // sin(2 pi m.theta) instead of cos
  UPFactor factor = UPFactor::One;
  double beta = 1.0;  // only for SinBU / CosBU
};

// Quasi-periodic nonlinearity F(theta, u, p) on a k-torus phase. The hull of
// f(t, u, p) = F(theta0 + omega t, u, p) is sampled by choosing theta0.
class ForcingField {
 public:
  ForcingField(std::vector<double> omega, std::vector<ForcingTerm> terms,
               bool even_in_p = false, bool odd_in_u = false, bool zero_at_u0 = false);

  // g(t, u, p) for the hull element determined by base. Torus phases are
  // reduced mod 1 before the trig evaluation, so the cocycle identity
  //   eval(b, t + tau, u, p) == eval(translate(b, tau), t, u, p)
  // holds to roundoff.
  double eval(const BasePoint& base, double t, double u, double p) const;

  // Exact symbolic partials (f_u, f_p) at the same point.
  struct Partials { double f_u, f_p; };
  Partials eval_partials(const BasePoint& base, double t, double u, double p) const;

  BasePoint translate(const BasePoint& b, double tau) const {
    return qpde::translate(b, tau, omega_);
  }

  int dim() const { return static_cast<int>(omega_.size()); }
  const std::vector<double>& frequencies() const { return omega_; }
  const std::vector<ForcingTerm>& terms() const { return terms_; }
  bool even_in_p() const { return even_in_p_; }
  bool odd_in_u() const { return odd_in_u_; }
  bool zero_at_u0() const { return zero_at_u0_; }

  // Nonempty when the pairwise-irrationality heuristic found a frequency ratio
  // suspiciously close to a small rational. Recorded, never fatal.
  const std::vector<std::string>& rationality_warnings() const { return warnings_; }

 private:
  std::vector<double> omega_;
  std::vector<ForcingTerm> terms_;
  bool even_in_p_, odd_in_u_, zero_at_u0_;
  std::vector<std::string> warnings_;
};

// Scan a uniformly sampled series for eps-almost-periods: lags tau on the
// sample grid with sup_t |s(t+tau) - s(t)| < eps over the overlap (lags up to
// half the series length). max_gap is the largest gap between found lags.
struct AlmostPeriodScan {
  std::vector<double> lags;
  double max_gap = 0.0;
  double mean_gap = 0.0;
};
AlmostPeriodScan almost_period_scan(std::span<const double> series, double dt, double eps);

}  // namespace qpde
