#include "qpde/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qpde::spectral {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution through the new-array API is.
// Plans are created once per (kind, size) with FFTW_ESTIMATE | FFTW_UNALIGNED
// so they can execute on arbitrary caller buffers.
class PlanCache {
 public:
  enum Kind { R2C, C2R, REDFT00, RODFT00 };

  static fftw_plan get(Kind kind, int n) {
    static PlanCache cache;
    auto key = std::make_pair(kind, n);
    // per-thread memo dodges the planner mutex on the hot path
    thread_local std::map<std::pair<Kind, int>, fftw_plan> memo;
    if (auto mit = memo.find(key); mit != memo.end()) return mit->second;
    std::lock_guard<std::mutex> lock(cache.mutex_);
    auto it = cache.plans_.find(key);
    if (it != cache.plans_.end()) {
      memo.emplace(key, it->second);
      return it->second;
    }

    std::vector<double> rin(static_cast<size_t>(n) + 2, 0.0);
    std::vector<double> rout(static_cast<size_t>(n) + 2, 0.0);
    std::vector<fftw_complex> cbuf(static_cast<size_t>(n) / 2 + 2);
    fftw_plan p = nullptr;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    switch (kind) {
      case R2C:
        p = fftw_plan_dft_r2c_1d(n, rin.data(), cbuf.data(), flags);
        break;
      case C2R:
        p = fftw_plan_dft_c2r_1d(n, cbuf.data(), rout.data(), flags);
        break;
      case REDFT00:
        p = fftw_plan_r2r_1d(n, rin.data(), rout.data(), FFTW_REDFT00, flags);
        break;
      case RODFT00:
        p = fftw_plan_r2r_1d(n, rin.data(), rout.data(), FFTW_RODFT00, flags);
        break;
    }
    if (!p) throw std::runtime_error("fftw plan creation failed");
    cache.plans_.emplace(key, p);
    memo.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<Kind, int>, fftw_plan> plans_;
};

void require_even(size_t n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("grid size must be even");
}

}  // namespace

cvec to_coeffs(std::span<const double> u) {
  const int n = static_cast<int>(u.size());
  require_even(u.size());
  cvec out(static_cast<size_t>(n) / 2 + 1);
  std::vector<double> in(u.begin(), u.end());
  fftw_execute_dft_r2c(PlanCache::get(PlanCache::R2C, n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double inv = 1.0 / n;
  for (auto& c : out) c *= inv;
  out.back() = {out.back().real(), 0.0};  // Nyquist is a cosine amplitude
  return out;
}

void from_coeffs_into(std::span<const std::complex<double>> coeffs, int n,
                      std::vector<double>& out) {
  require_even(static_cast<size_t>(n));
  if (coeffs.size() != static_cast<size_t>(n) / 2 + 1)
    throw std::invalid_argument("coefficient count does not match grid size");
  thread_local cvec scratch;  // c2r destroys its input
  scratch.assign(coeffs.begin(), coeffs.end());
  out.resize(static_cast<size_t>(n));
  fftw_execute_dft_c2r(PlanCache::get(PlanCache::C2R, n),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

std::vector<double> from_coeffs(std::span<const std::complex<double>> coeffs, int n) {
  std::vector<double> out;
  from_coeffs_into(coeffs, n, out);
  return out;
}

void derivative_coeffs(cvec& coeffs, double length, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (order == 0) return;
  const int half = static_cast<int>(coeffs.size()) - 1;
  const std::complex<double> i_unit(0.0, 1.0);
  for (int k = 0; k <= half; ++k) {
    const double w = two_pi * k / length;
    std::complex<double> mult = 1.0;
    for (int o = 0; o < order; ++o) mult *= i_unit * w;
    coeffs[static_cast<size_t>(k)] *= mult;
  }
  if (order % 2 == 1) coeffs.back() = 0.0;
  else coeffs.back() = {coeffs.back().real(), 0.0};
}

std::vector<double> derivative(std::span<const double> u, double length, int order) {
  cvec c = to_coeffs(u);
  derivative_coeffs(c, length, order);
  return from_coeffs(c, static_cast<int>(u.size()));
}

std::vector<double> resample(std::span<const double> u, int n_new) {
  const int n = static_cast<int>(u.size());
  if (n_new == n) return {u.begin(), u.end()};
  require_even(static_cast<size_t>(n_new));
  cvec c = to_coeffs(u);
  cvec d(static_cast<size_t>(n_new) / 2 + 1, 0.0);
  const int half_old = n / 2, half_new = n_new / 2;
  const int keep = std::min(half_old, half_new);
  for (int k = 0; k < keep; ++k) d[static_cast<size_t>(k)] = c[static_cast<size_t>(k)];
  if (half_new > half_old) {
    // the old Nyquist cosine becomes an ordinary mode on the finer grid
    d[static_cast<size_t>(half_old)] = c[static_cast<size_t>(half_old)] * 0.5;
  } else if (half_new < half_old) {
    d[static_cast<size_t>(half_new)] = 2.0 * c[static_cast<size_t>(half_new)].real();
  } else {
    d[static_cast<size_t>(half_new)] = c[static_cast<size_t>(half_new)];
  }
  return from_coeffs(d, n_new);
}

double eval_interp(std::span<const std::complex<double>> coeffs, int n, double length,
                   double x, int order) {
  const int half = n / 2;
  const double theta = two_pi * x / length;
  double acc = 0.0;
  if (order == 0) acc = coeffs[0].real();
  const std::complex<double> i_unit(0.0, 1.0);
  // phase recurrence instead of per-mode trig calls
  const std::complex<double> rot(std::cos(theta), std::sin(theta));
  std::complex<double> phase = rot;
  for (int k = 1; k < half; ++k) {
    const double w = two_pi * k / length;
    std::complex<double> term = coeffs[static_cast<size_t>(k)];
    for (int o = 0; o < order; ++o) term *= i_unit * w;
    acc += 2.0 * (term.real() * phase.real() - term.imag() * phase.imag());
    phase *= rot;
  }
  // Nyquist: derivative of the cosine interpretation
  const double wN = two_pi * half / length;
  const double cN = coeffs[static_cast<size_t>(half)].real();
  double nyq = 0.0;
  switch (order % 4) {
    case 0: nyq = cN * phase.real(); break;
    case 1: nyq = -cN * phase.imag(); break;
    case 2: nyq = -cN * phase.real(); break;
    case 3: nyq = cN * phase.imag(); break;
  }
  for (int o = 0; o < order; ++o) nyq *= wN;
  return acc + nyq;
}

void eval_interp_jet(std::span<const std::complex<double>> coeffs, int n, double length,
                     double x, double* w0, double* w1, double* w2) {
  const int half = n / 2;
  const double theta = two_pi * x / length;
  const std::complex<double> rot(std::cos(theta), std::sin(theta));
  std::complex<double> phase = rot;
  double a0 = coeffs[0].real(), a1 = 0.0, a2 = 0.0;
  for (int k = 1; k < half; ++k) {
    const double w = two_pi * k / length;
    const std::complex<double> c = coeffs[static_cast<size_t>(k)];
    const double re = c.real() * phase.real() - c.imag() * phase.imag();
    const double im = c.real() * phase.imag() + c.imag() * phase.real();
    a0 += 2.0 * re;
    a1 += -2.0 * w * im;
    a2 += -2.0 * w * w * re;
    phase *= rot;
  }
  const double wN = two_pi * half / length;
  const double cN = coeffs[static_cast<size_t>(half)].real();
  a0 += cN * phase.real();
  a1 += -cN * wN * phase.imag();
  a2 += -cN * wN * wN * phase.real();
  if (w0) *w0 = a0;
  if (w1) *w1 = a1;
  if (w2) *w2 = a2;
}

void shift_coeffs(cvec& coeffs, int n, double length, double a) {
  const int half = n / 2;
  for (int k = 1; k < half; ++k) {
    const double phi = two_pi * k * a / length;
    coeffs[static_cast<size_t>(k)] *= std::complex<double>(std::cos(phi), std::sin(phi));
  }
  const double phiN = two_pi * half * a / length;
  coeffs[static_cast<size_t>(half)] = {coeffs[static_cast<size_t>(half)].real() * std::cos(phiN), 0.0};
}

double tail_energy_fraction(std::span<const double> u) {
  cvec c = to_coeffs(u);
  const int half = static_cast<int>(c.size()) - 1;
  const int cut = half - half / 8;
  double total = 0.0, tail = 0.0;
  for (int k = 1; k <= half; ++k) {
    const double e = std::norm(c[static_cast<size_t>(k)]) * (k == half ? 1.0 : 2.0);
    total += e;
    if (k >= cut) tail += e;
  }
  if (total < 1e-20) return 0.0;
  return tail / total;
}

std::vector<double> dct1_coeffs(std::span<const double> values) {
  const int np = static_cast<int>(values.size());
  if (np < 3) throw std::invalid_argument("dct1 needs at least 3 nodes");
  const int m = np - 1;
  std::vector<double> in(values.begin(), values.end());
  std::vector<double> out(static_cast<size_t>(np));
  fftw_execute_r2r(PlanCache::get(PlanCache::REDFT00, np), in.data(), out.data());
  // REDFT00(u)_k = u_0 + (-1)^k u_m + 2 sum u_j cos(pi j k / m); self-inverse up to 2m.
  std::vector<double> a(static_cast<size_t>(np));
  a[0] = out[0] / (2.0 * m);
  for (int k = 1; k < m; ++k) a[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] / m;
  a[static_cast<size_t>(m)] = out[static_cast<size_t>(m)] / (2.0 * m);
  return a;
}

std::vector<double> dct1_values(std::span<const double> coeffs) {
  const int np = static_cast<int>(coeffs.size());
  if (np < 3) throw std::invalid_argument("dct1 needs at least 3 coefficients");
  const int m = np - 1;
  std::vector<double> in(static_cast<size_t>(np));
  in[0] = coeffs[0];
  for (int k = 1; k < m; ++k) in[static_cast<size_t>(k)] = coeffs[static_cast<size_t>(k)] * 0.5;
  in[static_cast<size_t>(m)] = coeffs[static_cast<size_t>(m)];
  std::vector<double> out(static_cast<size_t>(np));
  fftw_execute_r2r(PlanCache::get(PlanCache::REDFT00, np), in.data(), out.data());
  return out;
}

std::vector<double> dst1_coeffs(std::span<const double> interior_values) {
  const int ni = static_cast<int>(interior_values.size());
  if (ni < 1) throw std::invalid_argument("dst1 needs at least 1 interior node");
  const int m = ni + 1;
  std::vector<double> in(interior_values.begin(), interior_values.end());
  std::vector<double> out(static_cast<size_t>(ni));
  fftw_execute_r2r(PlanCache::get(PlanCache::RODFT00, ni), in.data(), out.data());
  std::vector<double> b(static_cast<size_t>(ni));
  for (int k = 0; k < ni; ++k) b[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] / m;
  return b;
}

std::vector<double> dst1_values(std::span<const double> coeffs) {
  const int ni = static_cast<int>(coeffs.size());
  std::vector<double> in(static_cast<size_t>(ni));
  for (int k = 0; k < ni; ++k) in[static_cast<size_t>(k)] = coeffs[static_cast<size_t>(k)] * 0.5;
  std::vector<double> out(static_cast<size_t>(ni));
  fftw_execute_r2r(PlanCache::get(PlanCache::RODFT00, ni), in.data(), out.data());
  return out;
}

}  // namespace qpde::spectral
