#pragma once

#include <complex>
#include <span>
#include <vector>

// Periodic and reflected trigonometric transforms (FFTW backend) plus the
// small set of spectral operations the lab is built on: differentiation,
// resampling, off-grid interpolation, phase shifts.
//
// Convention for the circle: a real sequence u_0..u_{n-1} sampled at
// x_j = j L / n has half-spectrum c_0..c_{n/2} with
//     u(x) = c_0 + sum_{k=1}^{n/2-1} 2 Re(c_k e^{2 pi i k x / L})
//                + c_{n/2} cos(2 pi (n/2) x / L),
// i.e. c_k = (1/n) sum_j u_j e^{-2 pi i j k / n}. The Nyquist bin is kept as a
// pure cosine amplitude (real part only).

namespace qpde::spectral {

using cvec = std::vector<std::complex<double>>;

// u (length n, n even) -> half-spectrum (length n/2+1), normalized as above.
cvec to_coeffs(std::span<const double> u);

// Inverse of to_coeffs; n is the target grid size (coeffs.size() == n/2+1).
std::vector<double> from_coeffs(std::span<const std::complex<double>> coeffs, int n);
void from_coeffs_into(std::span<const std::complex<double>> coeffs, int n,
                      std::vector<double>& out);

// In-place spectral derivative of given order (0..3 supported everywhere it is
// used; any positive order works). Odd orders zero the Nyquist bin.
void derivative_coeffs(cvec& coeffs, double length, int order);

// Grid-to-grid derivative on the circle.
std::vector<double> derivative(std::span<const double> u, double length, int order);

// Fourier resampling of periodic data onto n_new points (band-limited
// interpolation up or truncation down).
std::vector<double> resample(std::span<const double> u, int n_new);

// Pointwise evaluation of the trigonometric interpolant (or its derivative of
// the given order) at arbitrary x. O(n) per call.
double eval_interp(std::span<const std::complex<double>> coeffs, int n, double length,
                   double x, int order = 0);

// Value and first two derivatives of the interpolant in one pass.
void eval_interp_jet(std::span<const std::complex<double>> coeffs, int n, double length,
                     double x, double* w0, double* w1, double* w2);

// Multiply coefficients by the phase factors of a left argument shift:
// (sigma_a u)(x) = u(x + a). Nyquist handled as a cosine amplitude.
void shift_coeffs(cvec& coeffs, int n, double length, double a);

// Fraction of spectral energy (k >= 1) carried by the top eighth of modes.
// Returns 0 when total energy is below an absolute floor.
double tail_energy_fraction(std::span<const double> u);

// --- Reflected (interval) transforms -------------------------------------
// Cosine representation on [0, L] with nodes x_j = j L / m, j = 0..m:
//     u(x) = sum_{k=0}^{m} a_k cos(k pi x / L).
std::vector<double> dct1_coeffs(std::span<const double> values);  // values: m+1
std::vector<double> dct1_values(std::span<const double> coeffs);  // coeffs: m+1

// Sine representation on the interior nodes x_j = j L / m, j = 1..m-1:
//     u(x) = sum_{k=1}^{m-1} b_k sin(k pi x / L).
// Arrays are indexed 0..m-2 for k = 1..m-1.
std::vector<double> dst1_coeffs(std::span<const double> interior_values);
std::vector<double> dst1_values(std::span<const double> coeffs);

}  // namespace qpde::spectral
