#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/torus_flow.hpp"

using namespace qpde;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("torus ODE: constant field, reversibility, traversal time") {
  TorusVectorField half({TorusTerm{0.5, 0, 0, false}});
  CHECK(integrate_torus_ode(half, 0.2, 3.0, 1e-3) == doctest::Approx(1.7).epsilon(1e-12));

  TorusVectorField vf({TorusTerm{1.0, 0, 0, false}, TorusTerm{0.5, 0, 1, false}});
  const double fwd = integrate_torus_ode(vf, 0.3, 2.0, 1e-3);
  // the ODE is reversible (unlike the parabolic flow): going back recovers eta
  double back = fwd;
  {
    // integrate the time-reversed field from fwd for the same duration
    TorusVectorField rev({TorusTerm{-1.0, 0, 0, false}, TorusTerm{-0.5, 0, 1, false}});
    back = integrate_torus_ode(rev, fwd, 2.0, 1e-3);
  }
  CHECK(std::abs(back - 0.3) < 1e-9);

  // traversal period of the autonomous field: x advances one unit in
  // T = 1/sqrt(a^2-b^2) (quadrature of dx / (a + b cos 2 pi x))
  const double T = 1.0 / std::sqrt(1.0 - 0.25);
  const double x_T = integrate_torus_ode(vf, 0.0, T, 1e-4);
  CHECK(std::abs(x_T - 1.0) < 1e-6);

  CHECK_THROWS_AS(integrate_torus_ode(vf, 0.0, 1.0, 1e-2), ConfigError);
}

TEST_CASE("poincare map: rigid rotations and step-refinement oracle") {
  // time-only field: psi(eta) = eta + integral of f over one period
  TorusVectorField timeonly({TorusTerm{0.3, 1, 0, true}});  // 0.3 sin(2 pi t)
  for (double eta : {0.0, 0.3, 0.9})
    CHECK(poincare_map(timeonly, eta) == doctest::Approx(eta).epsilon(1e-10));

  TorusVectorField zero({});
  CHECK(poincare_map(zero, 0.42) == doctest::Approx(0.42));

  TorusVectorField arnold({TorusTerm{0.4, 0, 0, false}, TorusTerm{0.8 / (2.0 * pi), 0, 1, true}});
  const double coarse = poincare_map(arnold, 0.17, 1e-3);
  const double fine = poincare_map(arnold, 0.17, 1e-4);
  CHECK(std::abs(coarse - fine) < 1e-8);
  CHECK_NOTHROW(verify_poincare_monotone(arnold));
}

TEST_CASE("poincare lift commutes with integer translation") {
  TorusVectorField arnold({TorusTerm{0.42, 0, 0, false}, TorusTerm{0.9 / (2.0 * pi), 0, 1, true},
                           TorusTerm{0.05, 1, 0, true}});
  for (int i = 0; i < 100; ++i) {
    const double eta = i / 100.0;
    const double a = poincare_map(arnold, eta + 1.0);
    const double b = poincare_map(arnold, eta) + 1.0;
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("rotation numbers: rigid, quadrature oracle, mode locking") {
  TorusVectorField rigid({TorusTerm{0.3, 0, 0, false}});
  auto rr = rotation_number(rigid, 0.7, 400);
  CHECK(std::abs(rr.rho - 0.3) < 1e-12);
  CHECK(rr.seed_spread < 1e-11);

  // autonomous family: rho = sqrt(a^2 - b^2), |rho_n - rho| < 2/n
  TorusVectorField vf({TorusTerm{1.0, 0, 0, false}, TorusTerm{0.5, 0, 1, false}});
  auto ra = rotation_number(vf, 0.1, 800);
  const double expect = std::sqrt(0.75);
  for (const auto& [k, rho_k] : ra.table)
    CHECK(std::abs(rho_k - expect) < 2.0 / static_cast<double>(k));
  CHECK(ra.seed_spread < 4.0 / 800.0);

  // mode-locked field: orbits fall onto fixed points of the map, so the lift
  // displacement plateaus (rational rotation number 0) to machine accuracy
  TorusVectorField locked({TorusTerm{0.05, 0, 0, false}, TorusTerm{0.8 / (2.0 * pi), 0, 1, true}});
  for (double eta : {0.2, 0.55, 0.9}) {
    double x = eta;
    for (int k = 0; k < 200; ++k) x = poincare_map(locked, x);
    const double disp200 = x - eta;
    for (int k = 0; k < 200; ++k) x = poincare_map(locked, x);
    const double disp400 = x - eta;
    CHECK(std::abs(disp400 - disp200) < 1e-9);  // cobweb iteration has converged
    CHECK(std::abs(disp400) < 1.0);             // bounded displacement: rho = 0
  }
  auto rl = rotation_number(locked, 0.2, 400);
  CHECK(std::abs(rl.rho) < 1e-2);

  CHECK_THROWS_AS(rotation_number(rigid, 0.0, 50), ConfigError);
}

TEST_CASE("omega-limit classification is stable under dt refinement") {
  TorusVectorField rigid({TorusTerm{std::sqrt(2.0) - 1.0, 0, 0, false}});
  auto a = omega_limit_circle(rigid, 0.3, 10000, 1e-3);
  auto b = omega_limit_circle(rigid, 0.3, 10000, 5e-4);
  CHECK(a.cls == CircleOmegaClass::Dense);
  CHECK(b.cls == CircleOmegaClass::Dense);

  TorusVectorField third({TorusTerm{1.0 / 3.0, 0, 0, false}});
  auto c = omega_limit_circle(third, 0.1, 10000, 1e-3);
  CHECK(c.cls == CircleOmegaClass::Periodic);
  CHECK(c.points.size() == 3);
}

TEST_CASE("derived equation: exact cancellation and bounded quasi-periodic runs") {
  TorusVectorField rigid({TorusTerm{0.3, 0, 0, false}});
  auto run = derived_equation(rigid, 0.3, 0.55, 25.0, 1e-3);
  CHECK(run.sup_deviation == 0.0);
  for (double x : run.x) CHECK(x == 0.55);

  TorusVectorField arnold({TorusTerm{0.42, 0, 0, false}, TorusTerm{0.9 / (2.0 * pi), 0, 1, true},
                           TorusTerm{0.05, 1, 0, true}});
  auto rr = rotation_number(arnold, 0.0, 200);
  auto drun = derived_equation(arnold, rr.rho, 0.0, 100.0, 1e-3);
  CHECK(drun.sup_deviation < 2.0);  // boundedness monitor over the window
}
