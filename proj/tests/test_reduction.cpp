#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/integrator.hpp"
#include "qpde/reduction.hpp"
#include "qpde/shifts.hpp"
#include "qpde/spectral.hpp"
#include "test_helpers.hpp"

using namespace qpde;
using qpde::testing::term;

namespace {
constexpr double pi = std::numbers::pi;

ForcingField wave_field() {
  return ForcingField({1.0}, {term(2.0, {0}, false, UPFactor::UP),
                              term(1.0, {0}, false, UPFactor::U),
                              term(-1.0, {0}, false, UPFactor::U3)},
                      false, true, true);
}

std::vector<OrbitSnapshot> settled_wave_orbit(double t_extra, double dt, int sample_every) {
  const int n = 128;
  const double L = 4.0 * pi;
  const auto f = wave_field();
  auto u0 = circle_from_modes(n, L, 0.0, std::vector<double>{0.3}, std::vector<double>{1.0});
  IntegrationOptions warm{1e-3, 1 << 30, true};
  auto w = integrate(u0, BasePoint{{0.0}}, f, 30.0, warm);
  CircleStepper st(n, L, dt, f);
  st.seed(w.back().profile, w.back().base, 0.0);
  std::vector<OrbitSnapshot> snaps{st.snapshot()};
  const long steps = std::lround(t_extra / dt);
  for (long s = 1; s <= steps; ++s) {
    st.advance();
    if (s % sample_every == 0) snaps.push_back(st.snapshot());
  }
  return snaps;
}

}  // namespace

TEST_CASE("track_phase follows the analytic drifting solution") {
  const int n = 128;
  const double L = 2.0 * pi;
  const auto f = testing::drift_field();
  auto u0 = circle_from_modes(n, L, 0.0, std::vector<double>{1.0}, {});
  IntegrationOptions opt{1e-3, 100, true};
  auto snaps = integrate(u0, BasePoint{{0.0}}, f, 3.0, opt);
  auto track = track_phase(snaps);
  CHECK(track.L0 == doctest::Approx(L));
  for (size_t i = 0; i < track.times.size(); ++i)
    CHECK(std::abs(track.c_lifted[i] - (-snaps[i].t)) < 1e-4);
}

TEST_CASE("track_phase is constant on an equilibrium profile") {
  auto snaps = settled_wave_orbit(2.0, 1e-3, 200);
  auto track = track_phase(snaps);
  for (double c : track.c_lifted) CHECK(std::abs(c - track.c_lifted.front()) < 1e-6);
  // refinement self-consistency: the lift stays continuous at dt/2 as well
  auto fine = settled_wave_orbit(2.0, 5e-4, 400);
  CHECK_NOTHROW(track_phase(fine));
}

TEST_CASE("track_phase rejects homogeneous snapshots") {
  const int n = 32;
  const double L = 2.0 * pi;
  std::vector<OrbitSnapshot> snaps;
  for (int i = 0; i < 3; ++i)
    snaps.push_back({GridFunction(std::vector<double>(n, 1.0), Domain::Circle, L),
                     BasePoint{{0.0}}, 0.1 * i});
  CHECK_THROWS_AS(track_phase(snaps), DegenerateInputError);
}

TEST_CASE("compute_G on analytic profiles") {
  const int n = 128;
  const double L = 2.0 * pi;
  auto cosx = circle_from_modes(n, L, 0.0, std::vector<double>{1.0}, {});
  OrbitSnapshot snap{cosx, BasePoint{{0.0}}, 0.0};

  // pure transport: G = g_p = -1, the odd derivative vanishes at the peak
  CHECK(compute_G(snap, testing::drift_field()) == doctest::Approx(-1.0).epsilon(1e-9));
  // p-independent field: G = 0 on a symmetric profile
  CHECK(std::abs(compute_G(snap, testing::bistable_field())) < 1e-9);

  // two-mode profile: u'''/u'' at the refined max against a dense-grid oracle
  auto two = circle_from_modes(n, L, 0.0, std::vector<double>{1.0, 0.2}, {});
  OrbitSnapshot snap2{two, BasePoint{{0.0}}, 0.0};
  const double g = compute_G(snap2, testing::drift_field());
  const int nd = 64 * n;
  auto coeffs = spectral::to_coeffs(two.values());
  double best = -1e300, arg = 0.0;
  for (int j = 0; j < nd; ++j) {
    const double x = j * L / nd;
    const double v = spectral::eval_interp(coeffs, n, L, x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  auto d2 = [&](double x) { return -std::cos(x) - 0.8 * std::cos(2.0 * x); };
  auto d3 = [&](double x) { return std::sin(x) + 1.6 * std::sin(2.0 * x); };
  CHECK(std::abs(g - (-1.0 + d3(arg) / d2(arg))) < 1e-6);
}

TEST_CASE("compute_G is shift equivariant") {
  auto snaps = settled_wave_orbit(0.1, 1e-3, 100);
  const auto f = wave_field();
  const double g0 = compute_G(snaps.front(), f);
  for (double a : {0.7, 2.3, 5.1, 9.0}) {
    OrbitSnapshot shifted{shift(snaps.front().profile, a), snaps.front().base, snaps.front().t};
    CHECK(std::abs(compute_G(shifted, f) - g0) < 1e-8);
  }
}

TEST_CASE("verify_reduction: equilibrium gives near-zero residual on both sides") {
  auto snaps = settled_wave_orbit(1.0, 1e-2, 1);
  const auto f = wave_field();
  auto rr = verify_reduction(snaps, f);
  CHECK(rr.max_residual < 1e-4);
  for (double g : rr.g_values) CHECK(std::abs(g) < 1e-4);
}

TEST_CASE("find_common_critical_point on synthetic symmetric samples") {
  const int n = 128;
  const double L = 2.0 * pi;
  const ForcingField even_f({1.0}, {term(1.0, {0}, false, UPFactor::U)}, true, false, false);

  std::vector<OrbitSnapshot> snaps;
  for (double a2 : {0.0, 0.2, -0.3}) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double x = j * L / n;
      v[static_cast<size_t>(j)] = std::cos(x - L / 4.0) + a2 * std::cos(2.0 * (x - L / 4.0));
    }
    snaps.push_back({GridFunction(v, Domain::Circle, L), BasePoint{{0.0}}, 0.0});
  }
  auto cp = find_common_critical_point(snaps, even_f);
  const bool shared_axis =
      std::abs(cp.x0 - L / 4.0) < 1e-3 || std::abs(cp.x0 - 3.0 * L / 4.0) < 1e-3;
  CHECK(shared_axis);
  CHECK(cp.residual < 1e-8);

  // homogeneous snapshots: every x qualifies, the smallest comes back
  std::vector<OrbitSnapshot> flat;
  for (int i = 0; i < 3; ++i)
    flat.push_back({GridFunction(std::vector<double>(static_cast<size_t>(n), 0.5 + 0.1 * i),
                                 Domain::Circle, L),
                    BasePoint{{0.0}}, 0.0});
  auto cp2 = find_common_critical_point(flat, even_f);
  CHECK(cp2.x0 == 0.0);
  CHECK(cp2.residual < 1e-12);

  CHECK_THROWS_AS(find_common_critical_point(snaps, testing::drift_field()), ConfigError);
}

TEST_CASE("evaluation_conjugacy_check: constants, sentinel, synthetic violation") {
  const int n = 64;
  const double L = 2.0 * pi;
  auto constant = [&](double c) {
    return OrbitSnapshot{GridFunction(std::vector<double>(static_cast<size_t>(n), c),
                                      Domain::Circle, L),
                         BasePoint{{0.0}}, 0.0};
  };

  std::vector<std::vector<OrbitSnapshot>> singletons{{constant(1.0)}, {constant(-1.0)}};
  auto rep0 = evaluation_conjugacy_check(singletons, 0.0);
  CHECK(rep0.pairs_checked == 0);
  CHECK(std::isinf(rep0.modulus));
  CHECK(rep0.violations.empty());

  std::vector<std::vector<OrbitSnapshot>> pair{{constant(1.0), constant(-1.0)}};
  auto rep1 = evaluation_conjugacy_check(pair, 1.234);
  CHECK(rep1.pairs_checked == 1);
  CHECK(rep1.modulus == doctest::Approx(1.0));
  CHECK(rep1.violations.empty());

  // negative control: equal at x0 = 0, different elsewhere
  auto s1 = circle_from_modes(n, L, 0.0, {}, std::vector<double>{1.0});
  auto s2 = circle_from_modes(n, L, 0.0, {}, std::vector<double>{2.0});
  std::vector<std::vector<OrbitSnapshot>> bad{
      {OrbitSnapshot{s1, BasePoint{{0.0}}, 0.0}, OrbitSnapshot{s2, BasePoint{{0.0}}, 0.0}}};
  auto rep2 = evaluation_conjugacy_check(bad, 0.0);
  CHECK(rep2.violations.size() == 1);
}
