#pragma once

#include <string>
#include <vector>

#include "qpde/forcing.hpp"
#include "qpde/grid.hpp"
#include "qpde/integrator.hpp"

namespace qpde {

// Snapshots taken at base-phase returns: times when the hull phase re-enters
// the delta ball around target_base (one snapshot per entry episode, at the
// closest approach).
struct OmegaSample {
  std::vector<OrbitSnapshot> snapshots;
  BasePoint target_base;
  double delta_base = 0.02;
  double transient_discard = 0.0;
};

struct OmegaOptions {
  double dt = 1e-3;
  double delta_base = 0.02;
  double transient_discard = 0.0;  // absolute time
  int min_returns = 20;
  bool tail_check = true;
};

OmegaSample collect_omega_sample(const GridFunction& u0, const BasePoint& base,
                                 const ForcingField& field, double t_max,
                                 const OmegaOptions& opt);

struct Cluster {
  std::vector<int> members;  // indices into sample.snapshots
  int representative = -1;   // medoid under the quotient metric
  double diameter = 0.0;
  double score = -1.0;       // near-minimality score, filled by callers
};

// Single-linkage clustering under orbit_distance with threshold eps_cluster.
// Clusters come back ordered by size (largest first).
std::vector<Cluster> cluster_modulo_shift(const OmegaSample& sample, double eps_cluster);

// Re-integrates the cluster representative for recheck_horizon and reports the
// fraction of its base returns that stay within 2 * eps_cluster (quotient
// metric) of the cluster. 1.0 is consistent with minimality.
double near_minimality_score(const OmegaSample& sample, const Cluster& cluster,
                             const ForcingField& field, double recheck_horizon,
                             double eps_cluster, const OmegaOptions& opt);

enum class Alternative {
  SingleMinimal,
  MinimalPlusConnecting,
  TwoMinimalPlusConnecting,
  Inconclusive,
};
std::string alternative_name(Alternative a);

struct TrichotomyReport {
  Alternative alternative = Alternative::Inconclusive;
  std::vector<Cluster> clusters;       // scores filled
  std::vector<int> high_clusters;      // indices into clusters
  std::vector<int> connecting;         // snapshot indices serving as connecting evidence
  std::string note;
};

struct TrichotomyOptions {
  double eps_cluster = 1e-3;
  double high_score = 0.95;
  double dominant_fraction = 0.95;
  double recheck_horizon = 5.0;
  double separation_factor = 10.0;  // two minimal sets must sit > factor*eps apart
};

// Classify a sampled omega-limit set. Forward connecting evidence re-integrates
// outliers; backward evidence walks the stored history (the backward parabolic
// flow is never integrated).
TrichotomyReport classify_trichotomy(const OmegaSample& sample, std::vector<Cluster> clusters,
                                     const ForcingField& field, const TrichotomyOptions& topt,
                                     const OmegaOptions& oopt);

}  // namespace qpde
