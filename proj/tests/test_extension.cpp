#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qpde/errors.hpp"
#include "qpde/integrator.hpp"
#include "test_helpers.hpp"

using namespace qpde;
using qpde::testing::term;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("even extension of a cosine is the cosine on the doubled circle") {
  const int m = 32;
  const double L = 2.0;
  auto u0 = interval_from_cosines(m + 1, L, std::vector<double>{0.0, 1.0});
  auto ext = extend_even(u0);
  CHECK(ext.domain() == Domain::Circle);
  CHECK(ext.length() == doctest::Approx(2.0 * L));
  CHECK(ext.size() == 2 * m);
  for (int j = 0; j < 2 * m; ++j) {
    const double x = j * 2.0 * L / (2 * m);
    CHECK(std::abs(ext.values()[j] - std::cos(pi * x / L)) < 1e-12);
  }
  // constant stays constant
  auto c = interval_from_cosines(m + 1, L, std::vector<double>{0.7});
  auto cext = extend_even(c);
  for (double v : cext.values()) CHECK(v == doctest::Approx(0.7));
}

TEST_CASE("even extension of x(L-x) is even with small derivative at the seams") {
  const int m = 64;
  const double L = 1.0;
  std::vector<double> v(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double x = j * L / m;
    v[j] = x * (L - x);
  }
  GridFunction u0(v, Domain::IntervalNeumann, L);
  auto ext = extend_even(u0);
  const auto& e = ext.values();
  // direct symmetry check about 0 and about L
  for (int j = 1; j < m; ++j) {
    CHECK(e[j] == doctest::Approx(e[2 * m - j]).epsilon(1e-14));
    CHECK(e[(m + j) % (2 * m)] == doctest::Approx(e[(m - j + 2 * m) % (2 * m)]).epsilon(1e-14));
  }
  auto d1 = spatial_derivatives(ext, 1);
  CHECK(std::abs(d1.values()[0]) < 1e-3);      // grid-tolerance kink at the seam
  CHECK(std::abs(d1.values()[m]) < 1e-3);
}

TEST_CASE("odd extension of a sine and of piecewise data") {
  const int m = 32;
  const double L = 2.0;
  auto u0 = interval_from_sines(m + 1, L, std::vector<double>{1.0});
  auto ext = extend_odd(u0);
  for (int j = 0; j < 2 * m; ++j) {
    const double x = j * 2.0 * L / (2 * m);
    CHECK(std::abs(ext.values()[j] - std::sin(pi * x / L)) < 1e-12);
  }

  auto z = interval_from_sines(m + 1, L, std::vector<double>{0.0});
  auto zext = extend_odd(z);
  for (double v : zext.values()) CHECK(v == 0.0);

  // piecewise-polynomial profile vanishing at both ends: extension odd to
  // machine precision
  std::vector<double> w(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double x = j * L / m;
    w[j] = x < L / 2 ? x * x * (L / 2 - x) : -(L - x) * (L - x) * (L / 2 - x);
  }
  w[0] = 0.0;
  w[m] = 0.0;
  GridFunction pw(w, Domain::IntervalDirichlet, L);
  auto pext = extend_odd(pw);
  const auto& e = pext.values();
  CHECK(e[0] == 0.0);
  CHECK(e[m] == 0.0);
  for (int j = 1; j < m; ++j) CHECK(e[2 * m - j] == doctest::Approx(-e[j]).epsilon(1e-15));

  // endpoint violation is rejected
  std::vector<double> bad(m + 1, 0.0);
  bad[0] = 1e-6;
  CHECK_THROWS_AS(extend_odd(GridFunction(bad, Domain::IntervalNeumann, L)), ConfigError);
}

TEST_CASE("restrict is a left inverse of the extensions") {
  const int m = 32;
  const double L = 1.5;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> cosc(5), sinc(4);
  for (auto& c : cosc) c = dist(rng);
  for (auto& c : sinc) c = dist(rng);

  auto un = interval_from_cosines(m + 1, L, cosc);
  auto back = restrict_half(extend_even(un), Domain::IntervalNeumann);
  CHECK(testing::max_abs_diff(un.values(), back.values()) < 1e-12);

  auto ud = interval_from_sines(m + 1, L, sinc);
  auto back2 = restrict_half(extend_odd(ud), Domain::IntervalDirichlet);
  CHECK(testing::max_abs_diff(ud.values(), back2.values()) < 1e-12);

  // restriction of an asymmetric circle profile is just its [0, L] part
  auto asym = circle_from_modes(2 * m, 2.0 * L, 0.1, std::vector<double>{0.3},
                                std::vector<double>{0.5});
  auto part = restrict_half(asym, Domain::IntervalNeumann);
  for (int j = 0; j <= m; ++j) CHECK(part.values()[j] == asym.values()[j]);
}

TEST_CASE("direct interval heat eigenmodes decay exactly") {
  const int m = 64;
  const double L = 2.0;
  const auto f = testing::zero_field();
  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.sample_every = 1 << 30;

  auto un = interval_from_cosines(m + 1, L, std::vector<double>{0.0, 1.0});
  auto sn = solve_interval(un, BasePoint{{0.0}}, f, 1.0, opt);
  const double rate = std::pow(pi / L, 2);
  for (int j = 0; j <= m; ++j) {
    const double x = j * L / m;
    CHECK(std::abs(sn.back().profile.values()[j] - std::exp(-rate) * std::cos(pi * x / L)) < 1e-9);
  }

  auto ud = interval_from_sines(m + 1, L, std::vector<double>{1.0});
  auto sd = solve_interval(ud, BasePoint{{0.0}}, f, 1.0, opt);
  for (int j = 0; j <= m; ++j) {
    const double x = j * L / m;
    CHECK(std::abs(sd.back().profile.values()[j] - std::exp(-rate) * std::sin(pi * x / L)) < 1e-9);
  }
}

TEST_CASE("Neumann equivalence: direct cosine solve vs extend-integrate-restrict") {
  const int m = 64;
  const double L = pi;
  const ForcingField f({1.0}, {term(1.0, {0}, false, UPFactor::U),
                               term(-1.0, {0}, false, UPFactor::U3)},
                       /*even_in_p=*/true);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.sample_every = 1 << 30;
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> coeffs(5);
    for (auto& c : coeffs) c = dist(rng);
    auto u0 = interval_from_cosines(m + 1, L, coeffs);
    auto direct = solve_interval(u0, BasePoint{{0.0}}, f, 1.0, opt);
    auto via = solve_interval_via_extension(u0, BasePoint{{0.0}}, f, 1.0, opt);
    CHECK(testing::max_abs_diff(direct.back().profile.values(), via.back().profile.values()) <
          1e-6);
  }
}

TEST_CASE("Dirichlet equivalence: direct sine solve vs extend-integrate-restrict") {
  const int m = 64;
  const double L = pi;
  const ForcingField f({1.0}, {term(1.0, {0}, false, UPFactor::U),
                               term(-1.0, {0}, false, UPFactor::U3)},
                       false, /*odd_in_u=*/true, /*zero_at_u0=*/true);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.sample_every = 1 << 30;
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> coeffs(4);
    for (auto& c : coeffs) c = dist(rng);
    auto u0 = interval_from_sines(m + 1, L, coeffs);
    auto direct = solve_interval(u0, BasePoint{{0.0}}, f, 1.0, opt);
    auto via = solve_interval_via_extension(u0, BasePoint{{0.0}}, f, 1.0, opt);
    CHECK(testing::max_abs_diff(direct.back().profile.values(), via.back().profile.values()) <
          1e-6);
  }
}
