#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpde/errors.hpp"
#include "qpde/omega.hpp"
#include "qpde/shifts.hpp"
#include "test_helpers.hpp"

using namespace qpde;
using qpde::testing::term;

namespace {
constexpr double pi = std::numbers::pi;

OmegaSample synthetic_sample(std::vector<GridFunction> profiles) {
  OmegaSample s;
  s.target_base = BasePoint{{0.0}};
  double t = 1.0;
  for (auto& p : profiles) {
    s.snapshots.push_back({p, BasePoint{{0.0}}, t});
    t += 1.0;
  }
  return s;
}

}  // namespace

TEST_CASE("base returns land on integer times for a one-frequency hull") {
  const int n = 64;
  const double L = 2.0 * pi;
  const auto f = testing::bistable_field();
  GridFunction u0(std::vector<double>(static_cast<size_t>(n), 0.9), Domain::Circle, L);
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.02;
  opt.transient_discard = 0.0;
  auto sample = collect_omega_sample(u0, BasePoint{{0.25}}, f, 25.0, opt);
  CHECK(sample.snapshots.size() == 25);
  for (size_t i = 0; i < sample.snapshots.size(); ++i)
    CHECK(sample.snapshots[i].t == doctest::Approx(static_cast<double>(i + 1)).epsilon(1e-12));
}

TEST_CASE("two-frequency return times match a direct torus-orbit scan") {
  const int n = 64;
  const double L = 2.0 * pi;
  const double r2 = std::sqrt(2.0);
  const ForcingField f({1.0, r2}, {term(1.0, {0, 0}, false, UPFactor::U),
                                   term(-1.0, {0, 0}, false, UPFactor::U3)});
  GridFunction u0(std::vector<double>(static_cast<size_t>(n), 1.0), Domain::Circle, L);
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.1;
  opt.transient_discard = 0.0;
  opt.min_returns = 20;
  const double t_max = 120.0;
  auto sample = collect_omega_sample(u0, BasePoint{{0.0, 0.0}}, f, t_max, opt);

  // direct phase scan (no PDE): episodes of the base orbit in the delta ball
  std::vector<double> oracle_times;
  {
    const std::vector<double> omega{1.0, r2};
    const BasePoint target{{0.0, 0.0}};
    bool inside = false;
    double best_d = 0.0, best_t = 0.0;
    const long steps = std::lround(t_max / opt.dt);
    for (long s = 0; s <= steps; ++s) {
      const double t = s * opt.dt;
      const double d = hull_distance(translate(target, t, omega), target);
      if (d < opt.delta_base) {
        if (!inside || d < best_d) {
          best_d = d;
          best_t = t;
        }
        inside = true;
      } else if (inside) {
        inside = false;
        if (best_t > 0.0) oracle_times.push_back(best_t);
      }
    }
  }
  REQUIRE(sample.snapshots.size() == oracle_times.size());
  for (size_t i = 0; i < oracle_times.size(); ++i)
    CHECK(sample.snapshots[i].t == doctest::Approx(oracle_times[i]).epsilon(1e-12));
}

TEST_CASE("heat-flow returns are all near the constant mean profile") {
  const int n = 64;
  const double L = 2.0 * pi;
  const auto f = testing::zero_field();
  std::mt19937_64 rng(5);
  auto u0 = testing::random_profile(rng, n, L, 3, 0.5, 0.2);
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.05;
  opt.transient_discard = 19.5;  // mode-1 decay reaches 1e-8 around t = 19
  auto sample = collect_omega_sample(u0, BasePoint{{0.0}}, f, 40.0, opt);
  const double mean = u0.mean();
  for (const auto& s : sample.snapshots)
    for (double v : s.profile.values()) CHECK(std::abs(v - mean) < 1e-8);
}

TEST_CASE("insufficient returns raise an error carrying the achieved count") {
  const int n = 64;
  const double L = 2.0 * pi;
  const auto f = testing::bistable_field();
  GridFunction u0(std::vector<double>(static_cast<size_t>(n), 0.9), Domain::Circle, L);
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.02;
  try {
    collect_omega_sample(u0, BasePoint{{0.0}}, f, 6.0, opt);
    CHECK(false);
  } catch (const InsufficientReturnsError& e) {
    CHECK(e.achieved == 6);
  }
}

TEST_CASE("clustering: one shift orbit is one cluster, mixtures split") {
  const int n = 64;
  const double L = 2.0 * pi;
  auto base = circle_from_modes(n, L, 0.1, std::vector<double>{1.0}, std::vector<double>{0.2});
  std::vector<GridFunction> one;
  for (int i = 0; i < 8; ++i) one.push_back(shift(base, 0.71 * i));
  auto s1 = synthetic_sample(one);
  auto c1 = cluster_modulo_shift(s1, 1e-3);
  REQUIRE(c1.size() == 1);
  CHECK(c1.front().diameter < 1e-6);

  // mixture of two shapes at quotient distance well above the threshold
  auto other = circle_from_modes(n, L, -0.4, std::vector<double>{0.0, 0.8}, {});
  CHECK(orbit_distance(base, other) > 0.5);
  std::vector<GridFunction> mix;
  for (int i = 0; i < 5; ++i) mix.push_back(shift(base, 0.9 * i));
  for (int i = 0; i < 5; ++i) mix.push_back(shift(other, 1.3 * i));
  auto s2 = synthetic_sample(mix);
  auto c2 = cluster_modulo_shift(s2, 1e-3);
  CHECK(c2.size() == 2);
  CHECK(c2[0].members.size() == 5);
  CHECK(c2[1].members.size() == 5);
}

TEST_CASE("near-minimality: attracting equilibrium scores 1, transition scores low") {
  const int n = 64;
  const double L = 2.0 * pi;
  const auto f = testing::bistable_field();
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.02;
  opt.transient_discard = 8.0;
  GridFunction near_one(std::vector<double>(static_cast<size_t>(n), 0.9), Domain::Circle, L);
  auto sample = collect_omega_sample(near_one, BasePoint{{0.0}}, f, 30.0, opt);
  auto clusters = cluster_modulo_shift(sample, 1e-3);
  REQUIRE(clusters.size() == 1);
  const double score = near_minimality_score(sample, clusters.front(), f, 5.0, 1e-3, opt);
  CHECK(score == doctest::Approx(1.0));

  // a mid-transition state seeded as its own cluster runs away
  const ForcingField slow({1.0}, {term(0.15, {0}, false, UPFactor::U),
                                  term(-0.15, {0}, false, UPFactor::U3)},
                          true, true, true);
  OmegaOptions sopt;
  sopt.dt = 1e-3;
  sopt.delta_base = 0.02;
  sopt.transient_discard = 0.0;
  GridFunction tiny(std::vector<double>(static_cast<size_t>(n), 1e-4), Domain::Circle, L);
  auto path = collect_omega_sample(tiny, BasePoint{{0.0}}, slow, 80.0, sopt);
  // pick a genuinely transitional snapshot (amplitude near 1/2)
  int mid = -1;
  for (size_t i = 0; i < path.snapshots.size(); ++i)
    if (path.snapshots[i].profile.max_abs() > 0.3 && path.snapshots[i].profile.max_abs() < 0.7)
      mid = static_cast<int>(i);
  REQUIRE(mid >= 0);
  Cluster solo;
  solo.members = {mid};
  solo.representative = mid;
  const double s2 = near_minimality_score(path, solo, slow, 5.0, 1e-3, sopt);
  CHECK(s2 < 0.95);
}

TEST_CASE("u-independent forcing tracks the quadrature of its mean and stays minimal") {
  const int n = 64;
  const double L = 2.0 * pi;
  const double r2 = std::sqrt(2.0);
  // pure time forcing: spatially constant data follows du/dt = f(t)
  const ForcingField f({1.0, r2}, {term(0.3, {1, 0}, false, UPFactor::One),
                                   term(0.2, {0, 1}, true, UPFactor::One)});
  GridFunction u0(std::vector<double>(static_cast<size_t>(n), 0.5), Domain::Circle, L);
  OmegaOptions opt;
  opt.dt = 1e-4;
  opt.delta_base = 0.1;
  opt.transient_discard = 0.0;
  auto sample = collect_omega_sample(u0, BasePoint{{0.0, 0.0}}, f, 80.0, opt);
  // explicit quadrature oracle for the homogeneous component
  auto quad = [&](double t) {
    return 0.5 + 0.3 / (2.0 * pi) * std::sin(2.0 * pi * t) +
           0.2 / (2.0 * pi * r2) * (1.0 - std::cos(2.0 * pi * r2 * t));
  };
  for (const auto& s : sample.snapshots)
    CHECK(std::abs(s.profile.values()[0] - quad(s.t)) < 5e-6);

  auto clusters = cluster_modulo_shift(sample, 0.05);
  REQUIRE(clusters.size() == 1);
  TrichotomyOptions topt;
  topt.eps_cluster = 0.05;
  topt.recheck_horizon = 20.0;
  auto rep = classify_trichotomy(sample, clusters, f, topt, opt);
  CHECK(rep.alternative == Alternative::SingleMinimal);
}

TEST_CASE("classification is deterministic and shift covariant") {
  const int n = 128;
  const double L = 4.0 * pi;
  const ForcingField f({1.0}, {term(2.0, {0}, false, UPFactor::UP),
                               term(1.0, {0}, false, UPFactor::U),
                               term(-1.0, {0}, false, UPFactor::U3)},
                       false, true, true);
  auto u0 = circle_from_modes(n, L, 0.0, std::vector<double>{0.3}, std::vector<double>{1.0});
  OmegaOptions opt;
  opt.dt = 1e-3;
  opt.delta_base = 0.02;
  opt.transient_discard = 6.0;
  TrichotomyOptions topt;
  topt.eps_cluster = 1e-3;
  topt.recheck_horizon = 5.0;

  auto classify_from = [&](const GridFunction& start) {
    auto sample = collect_omega_sample(start, BasePoint{{0.0}}, f, 28.0, opt);
    auto clusters = cluster_modulo_shift(sample, topt.eps_cluster);
    auto rep = classify_trichotomy(sample, clusters, f, topt, opt);
    return std::make_pair(sample, rep);
  };

  auto [sample_a, rep_a] = classify_from(u0);
  auto [sample_b, rep_b] = classify_from(u0);
  CHECK(rep_a.alternative == rep_b.alternative);
  REQUIRE(rep_a.clusters.size() == rep_b.clusters.size());
  for (size_t i = 0; i < rep_a.clusters.size(); ++i) {
    CHECK(rep_a.clusters[i].score == rep_b.clusters[i].score);  // bit-for-bit
    CHECK(rep_a.clusters[i].diameter == rep_b.clusters[i].diameter);
  }
  // identical runs reproduce identical snapshot values
  for (size_t i = 0; i < sample_a.snapshots.size(); ++i)
    CHECK(testing::max_abs_diff(sample_a.snapshots[i].profile.values(),
                                sample_b.snapshots[i].profile.values()) == 0.0);

  // shifting the initial data shifts the representatives, nothing else
  const double a = 1.7;
  auto [sample_c, rep_c] = classify_from(shift(u0, a));
  CHECK(rep_a.alternative == rep_c.alternative);
  const auto& ra = sample_a.snapshots[static_cast<size_t>(rep_a.clusters[0].representative)];
  const auto& rc = sample_c.snapshots[static_cast<size_t>(rep_c.clusters[0].representative)];
  CHECK(orbit_distance(ra.profile, rc.profile) < 1e-6);
  CHECK(alternative_name(rep_a.alternative) == "single_minimal");
}
