#include "qpde/omega.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qpde/errors.hpp"
#include "qpde/shifts.hpp"

namespace qpde {

namespace {

// Collect one snapshot per delta-ball entry episode, at the closest approach.
std::vector<OrbitSnapshot> returns_along(CircleStepper& st, const BasePoint& target,
                                         double t_max, const OmegaOptions& opt) {
  std::vector<OrbitSnapshot> hits;
  const long steps = std::lround((t_max - st.time()) / opt.dt);
  bool inside = false;
  double best_d = 0.0;
  OrbitSnapshot best_snap{st.current(), st.current_base(), st.time()};
  bool have_best = false;

  auto visit = [&](double t_now) {
    const BasePoint b = st.current_base();
    const double d = hull_distance(b, target);
    if (d < opt.delta_base) {
      if (!inside) {
        inside = true;
        best_d = d;
        best_snap = {st.current(), b, t_now};
        have_best = true;
      } else if (d < best_d) {
        best_d = d;
        best_snap = {st.current(), b, t_now};
      }
    } else if (inside) {
      inside = false;
      if (have_best && best_snap.t > opt.transient_discard) {
        if (opt.tail_check) check_spectral_tail(best_snap.profile, best_snap.t);
        hits.push_back(best_snap);
      }
      have_best = false;
    }
  };

  visit(st.time());
  for (long s = 0; s < steps; ++s) {
    st.advance();
    visit(st.time());
  }
  if (inside && have_best && best_snap.t > opt.transient_discard) hits.push_back(best_snap);
  return hits;
}

// Is u within tol (quotient metric) of any cluster member? Screened by the
// shift-invariant lower bound, decided by a threshold-early-exit search.
bool within_of_cluster(const GridFunction& u, const OmegaSample& sample, const Cluster& cluster,
                       double tol) {
  for (int idx : cluster.members) {
    const auto& member = sample.snapshots[static_cast<size_t>(idx)].profile;
    if (orbit_distance_lower_bound(u, member) > tol) continue;
    if (orbit_distance(u, member, 256, true, tol) <= tol) return true;
  }
  return false;
}

}  // namespace

OmegaSample collect_omega_sample(const GridFunction& u0, const BasePoint& base,
                                 const ForcingField& field, double t_max,
                                 const OmegaOptions& opt) {
  CircleStepper st(u0.size(), u0.length(), opt.dt, field);
  st.seed(u0, base);
  OmegaSample sample;
  sample.target_base = base;
  sample.delta_base = opt.delta_base;
  sample.transient_discard = opt.transient_discard;
  sample.snapshots = returns_along(st, base, t_max, opt);
  if (static_cast<int>(sample.snapshots.size()) < opt.min_returns)
    throw InsufficientReturnsError(
        "omega sampling collected " + std::to_string(sample.snapshots.size()) + " returns (need " +
            std::to_string(opt.min_returns) + "); increase t_max or delta_base",
        static_cast<int>(sample.snapshots.size()));
  return sample;
}

std::vector<Cluster> cluster_modulo_shift(const OmegaSample& sample, double eps_cluster) {
  const int n = static_cast<int>(sample.snapshots.size());
  auto prof = [&](int i) -> const GridFunction& {
    return sample.snapshots[static_cast<size_t>(i)].profile;
  };

  // single linkage by union-find; pairwise decisions use the cheap
  // shift-invariant screen before the exact quotient distance
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (find(i) == find(j)) continue;
      if (orbit_distance_lower_bound(prof(i), prof(j)) >= eps_cluster) continue;
      if (orbit_distance(prof(i), prof(j), 256, true, eps_cluster) < eps_cluster) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }

  std::vector<Cluster> clusters;
  std::vector<int> root_to_cluster(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_cluster[static_cast<size_t>(r)] < 0) {
      root_to_cluster[static_cast<size_t>(r)] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    clusters[static_cast<size_t>(root_to_cluster[static_cast<size_t>(r)])].members.push_back(i);
  }

  // exact intra-cluster distances for medoid and diameter
  for (auto& c : clusters) {
    const size_t m = c.members.size();
    if (m == 1) {
      c.representative = c.members.front();
      c.diameter = 0.0;
      continue;
    }
    std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
    for (size_t a = 0; a < m; ++a)
      for (size_t b = a + 1; b < m; ++b) {
        const double dist = orbit_distance(prof(c.members[a]), prof(c.members[b]));
        d[a][b] = dist;
        d[b][a] = dist;
      }
    double best_sum = 1e300;
    for (size_t a = 0; a < m; ++a) {
      double sum = 0.0;
      for (size_t b = 0; b < m; ++b) {
        sum += d[a][b];
        c.diameter = std::max(c.diameter, d[a][b]);
      }
      if (sum < best_sum) {
        best_sum = sum;
        c.representative = c.members[a];
      }
    }
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return a.members.front() < b.members.front();
  });
  return clusters;
}

double near_minimality_score(const OmegaSample& sample, const Cluster& cluster,
                             const ForcingField& field, double recheck_horizon,
                             double eps_cluster, const OmegaOptions& opt) {
  if (cluster.members.empty()) throw ConfigError("near_minimality_score: empty cluster");
  const auto& rep = sample.snapshots[static_cast<size_t>(cluster.representative)];
  CircleStepper st(rep.profile.size(), rep.profile.length(), opt.dt, field);
  st.seed(rep.profile, rep.base, rep.t);
  OmegaOptions ropt = opt;
  ropt.transient_discard = 0.0;
  auto hits = returns_along(st, sample.target_base, rep.t + recheck_horizon, ropt);
  // the immediate re-entry around the seed time is not evidence
  int total = 0, good = 0;
  for (const auto& h : hits) {
    if (h.t <= rep.t + 1e-12) continue;
    ++total;
    if (within_of_cluster(h.profile, sample, cluster, 2.0 * eps_cluster)) ++good;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(good) / total;
}

std::string alternative_name(Alternative a) {
  switch (a) {
    case Alternative::SingleMinimal: return "single_minimal";
    case Alternative::MinimalPlusConnecting: return "minimal_plus_connecting";
    case Alternative::TwoMinimalPlusConnecting: return "two_minimal_plus_connecting";
    case Alternative::Inconclusive: return "inconclusive";
  }
  return "?";
}

TrichotomyReport classify_trichotomy(const OmegaSample& sample, std::vector<Cluster> clusters,
                                     const ForcingField& field, const TrichotomyOptions& topt,
                                     const OmegaOptions& oopt) {
  TrichotomyReport rep;
  for (auto& c : clusters)
    c.score = near_minimality_score(sample, c, field, topt.recheck_horizon, topt.eps_cluster, oopt);
  rep.clusters = clusters;

  std::vector<int> high;
  for (size_t i = 0; i < clusters.size(); ++i)
    if (clusters[i].score >= topt.high_score) high.push_back(static_cast<int>(i));
  rep.high_clusters = high;

  const size_t total = sample.snapshots.size();
  std::vector<char> in_high(total, 0);
  size_t high_members = 0;
  for (int hi : high)
    for (int m : clusters[static_cast<size_t>(hi)].members) {
      in_high[static_cast<size_t>(m)] = 1;
      ++high_members;
    }

  auto near_high_union = [&](const GridFunction& u) {
    for (int hi : high)
      if (within_of_cluster(u, sample, clusters[static_cast<size_t>(hi)], 2.0 * topt.eps_cluster))
        return true;
    return false;
  };

  // backward evidence from stored history: prefix flags of "this return was
  // already near the minimal structure"
  std::vector<char> near_flag(total, 0);
  for (size_t i = 0; i < total; ++i)
    near_flag[i] = in_high[i] || near_high_union(sample.snapshots[i].profile);
  std::vector<char> any_earlier_near(total, 0);
  {
    char seen = 0;
    for (size_t i = 0; i < total; ++i) {
      any_earlier_near[i] = seen;
      seen = seen || near_flag[i];
    }
  }

  auto forward_approaches = [&](int idx) {
    const auto& snap = sample.snapshots[static_cast<size_t>(idx)];
    CircleStepper st(snap.profile.size(), snap.profile.length(), oopt.dt, field);
    st.seed(snap.profile, snap.base, snap.t);
    OmegaOptions ropt = oopt;
    ropt.transient_discard = 0.0;
    auto hits = returns_along(st, sample.target_base, snap.t + topt.recheck_horizon, ropt);
    for (const auto& h : hits) {
      if (h.t <= snap.t + 1e-12) continue;
      if (near_high_union(h.profile)) return true;
    }
    return false;
  };

  auto collect_connecting = [&] {
    for (size_t i = 0; i < total; ++i)
      if (!in_high[i] && any_earlier_near[i] && forward_approaches(static_cast<int>(i)))
        rep.connecting.push_back(static_cast<int>(i));
  };

  if (high.size() == 1) {
    if (static_cast<double>(high_members) >= topt.dominant_fraction * static_cast<double>(total)) {
      rep.alternative = Alternative::SingleMinimal;
      return rep;
    }
    collect_connecting();
    if (!rep.connecting.empty()) {
      rep.alternative = Alternative::MinimalPlusConnecting;
    } else {
      rep.alternative = Alternative::Inconclusive;
      rep.note = "one minimal cluster, but outliers lack two-sided connecting evidence";
    }
    return rep;
  }

  if (high.size() == 2) {
    const auto& c1 = clusters[static_cast<size_t>(high[0])];
    const auto& c2 = clusters[static_cast<size_t>(high[1])];
    const double sep =
        orbit_distance(sample.snapshots[static_cast<size_t>(c1.representative)].profile,
                       sample.snapshots[static_cast<size_t>(c2.representative)].profile);
    if (sep > topt.separation_factor * topt.eps_cluster) {
      collect_connecting();
      if (!rep.connecting.empty()) {
        rep.alternative = Alternative::TwoMinimalPlusConnecting;
        return rep;
      }
      rep.note = "two separated minimal clusters without connecting evidence";
    } else {
      rep.note = "two minimal clusters closer than the separation threshold";
    }
    rep.alternative = Alternative::Inconclusive;
    return rep;
  }

  rep.alternative = Alternative::Inconclusive;
  rep.note =
      high.empty() ? "no cluster scores as near-minimal" : "more than two near-minimal clusters";
  return rep;
}

}  // namespace qpde
