// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qpde/errors.hpp"
#include "qpde/integrator.hpp"
#include "qpde/io.hpp"
#include "qpde/scenario.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using qpde::scenario::ScenarioResult;

namespace {

constexpr double pi = std::numbers::pi;

struct CriterionOutcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fold(const ScenarioResult& r) {
    for (const auto& a : r.assertions) {
      if (!a.pass) {
        pass = false;
        notes.push_back(r.name + "/" + a.name + " [" + a.details + "]");
      }
    }
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::map<std::string, json> bundled;

ScenarioResult run_named(const std::string& name, const std::string& outdir = "") {
  return qpde::scenario::run_scenario(bundled.at(name), outdir);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int finish(int id, const std::string& label, const CriterionOutcome& out, double secs,
           double limit) {
  const bool within = secs < limit;
  const bool pass = out.pass && within;
  std::printf("[%s] criterion %d: %s (%.1f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", id,
              label.c_str(), secs, limit);
  if (!within) std::printf("       runtime limit exceeded\n");
  for (const auto& n : out.notes) std::printf("       %s\n", n.c_str());
  return pass ? 0 : 1;
}

// analytic drifting regression: u = e^{-t} cos(x - t) for f = -u_x
bool drift_regression(std::string& detail) {
  using namespace qpde;
  const int n = 128;
  const double L = 2.0 * pi;
  auto u0 = circle_from_modes(n, L, 0.0, std::vector<double>{1.0}, {});
  ForcingTerm t;
  t.coeff = -1.0;
  t.mode = {0};
  t.factor = UPFactor::P;
  const ForcingField f({1.0}, {t});
  IntegrationOptions opt{1e-3, 1 << 30, true};
  auto snaps = integrate(u0, BasePoint{{0.0}}, f, 1.0, opt);
  double err = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = j * L / n;
    err = std::max(err, std::abs(snaps.back().profile.values()[static_cast<size_t>(j)] -
                                 std::exp(-1.0) * std::cos(x - 1.0)));
  }
  detail = "drift error " + io::fmt(err);
  return err < 1e-6;
}

std::vector<std::string> files_in(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file()) out.push_back(fs::relative(entry.path(), dir).string());
  std::sort(out.begin(), out.end());
  return out;
}

bool identical_files(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

}  // namespace

int main() {
  for (auto& [name, cfg] : qpde::scenario::bundled_configs()) bundled[name] = cfg;
  int failures = 0;
  const std::string root = "acceptance_out";
  fs::remove_all(root);

  // 1. analytic regressions
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    out.fold(run_named("heat_decay", root + "/run1/heat_decay"));
    std::string detail;
    out.require(drift_regression(detail), "drift regression: " + detail);
    failures += finish(1, "analytic regressions (heat mode decay, drifting solution)", out,
                       seconds_since(t0), 20.0);
  }

  // 2. Sturm suite, 100 randomized pairs
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    json cfg = bundled.at("zero_monotone");
    cfg["params"]["pairs"] = 100;
    cfg["name"] = "zero_monotone_100";
    out.fold(qpde::scenario::run_scenario(cfg, root + "/run1/zero_monotone_100"));
    failures += finish(2, "Sturm suite: monotone counts, witnessed drops, constant tails", out,
                       seconds_since(t0), 300.0);
  }

  // 3. constancy of the zero number on five near-minimal scenarios
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    for (const auto& name :
         {"shift_constancy_wave", "shift_constancy_wave_rotating",
          "shift_constancy_wave_periodic", "shift_constancy_bump",
          "shift_constancy_bump_forced"})
      out.fold(run_named(name, root + "/run1/" + std::string(name)));
    failures += finish(3, "zero-number constancy across 32 shifts on near-minimal orbits", out,
                       seconds_since(t0), 300.0);
  }

  // 4. circle reduction: analytic bound plus halving on three qp scenarios
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    for (const auto& name : {"circle_reduction_analytic", "circle_reduction_qp1",
                             "circle_reduction_qp2", "circle_reduction_qp3"})
      out.fold(run_named(name, root + "/run1/" + std::string(name)));
    failures += finish(4, "circle reduction dc/dt = G with second-order residual decay", out,
                       seconds_since(t0), 300.0);
  }

  // 5. extension equivalence, ten random initial data each
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    out.fold(run_named("extension_equivalence_neumann", root + "/run1/ext_neumann"));
    out.fold(run_named("extension_equivalence_dirichlet", root + "/run1/ext_dirichlet"));
    failures += finish(5, "Neumann/Dirichlet solves match extend-solve-restrict to 1e-6", out,
                       seconds_since(t0), 120.0);
  }

  // 6. common critical point and evaluation-map injectivity
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    for (const auto& name : {"symmetric_conjugacy_bump", "symmetric_conjugacy_bump_forced",
                             "symmetric_conjugacy_homogeneous"})
      out.fold(run_named(name, root + "/run1/" + std::string(name)));
    failures += finish(6, "common critical point and evaluation-map separation", out,
                       seconds_since(t0), 300.0);
  }

  // 7. trichotomy sanity
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    for (const auto& name : {"trichotomy_bistable", "trichotomy_connecting_homogeneous",
                             "trichotomy_connecting_odd"})
      out.fold(run_named(name, root + "/run1/" + std::string(name)));
    failures += finish(7, "omega-limit trichotomy classification and cluster sanity", out,
                       seconds_since(t0), 900.0);
  }

  // 8. torus example
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    out.fold(run_named("fink_torus", root + "/run1/fink_torus"));
    failures += finish(8, "circle-map rotation numbers, gap classification, derived equation",
                       out, seconds_since(t0), 120.0);
  }

  // 9. determinism: identical config and seed give byte-identical artifacts
  {
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome out;
    const std::vector<std::string> names{"heat_decay", "drop_witness", "zero_monotone",
                                         "shift_constancy_bump", "circle_reduction_qp1",
                                         "fink_torus"};
    for (const auto& name : names) {
      run_named(name, root + "/det_a/" + name);
      run_named(name, root + "/det_b/" + name);
      for (const auto& rel : files_in(root + "/det_a/" + name)) {
        const fs::path a = fs::path(root) / "det_a" / name / rel;
        const fs::path b = fs::path(root) / "det_b" / name / rel;
        out.require(fs::exists(b) && identical_files(a, b),
                    name + "/" + rel + " differs between reruns");
      }
    }
    failures += finish(9, "byte-identical artifacts under rerun with the same config and seed",
                       out, seconds_since(t0), 600.0);
  }

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
