// Experiment runner: executes named scenario configurations and writes their
// artifacts (config echo, summary, CSV tables, plots).
//
//   qpde list
//   qpde run <config.json> [more configs...] [--jobs N] [--output DIR] [--seed S]
//
// Exit codes: 0 all assertions pass, 2 assertion failure, 3 numerical error
// (blow-up / resolution), 4 configuration error.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qpde/errors.hpp"
#include "qpde/scenario.hpp"

namespace {

using json = nlohmann::ordered_json;

int usage() {
  std::cerr << "usage:\n"
            << "  qpde list\n"
            << "  qpde run <config.json> [config2.json ...] [--jobs N] [--output DIR] [--seed S]\n";
  return 4;
}

struct Job {
  std::string config_path;
  json config;
  std::string output_dir;
  int exit_code = 0;
  std::string message;
};

int run_job(Job& job) {
  try {
    auto result = qpde::scenario::run_scenario(job.config, job.output_dir);
    job.message = result.name + ": " + (result.all_pass() ? "PASS" : "FAIL") + " (" +
                  std::to_string(result.assertions.size()) + " assertions, artifacts in " +
                  job.output_dir + ")";
    return result.all_pass() ? 0 : 2;
  } catch (const qpde::ConfigError& e) {
    job.message = job.config_path + ": config error: " + e.what();
    return 4;
  } catch (const qpde::NumericalError& e) {
    job.message = job.config_path + ": numerical error: " + e.what();
    return 3;
  } catch (const std::exception& e) {
    job.message = job.config_path + ": error: " + e.what();
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) return usage();

  if (args[0] == "list") {
    for (const auto& entry : qpde::scenario::catalog())
      std::printf("%-32s %s [%s]\n", entry.kind.c_str(), entry.description.c_str(),
                  entry.anchor.c_str());
    return 0;
  }
  if (args[0] != "run") return usage();

  std::vector<std::string> configs;
  std::string output_root;
  long seed_override = -1;
  bool have_seed = false;
  int jobs = 1;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--jobs" && i + 1 < args.size()) {
      jobs = std::stoi(args[++i]);
    } else if (args[i] == "--output" && i + 1 < args.size()) {
      output_root = args[++i];
    } else if (args[i] == "--seed" && i + 1 < args.size()) {
      seed_override = std::stol(args[++i]);
      have_seed = true;
    } else if (!args[i].empty() && args[i][0] == '-') {
      std::cerr << "unknown flag " << args[i] << "\n";
      return usage();
    } else {
      configs.push_back(args[i]);
    }
  }
  if (configs.empty()) return usage();
  if (jobs < 1) jobs = 1;

  std::vector<Job> joblist;
  for (const auto& path : configs) {
    Job job;
    job.config_path = path;
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open config '" << path << "'\n";
      return 4;
    }
    try {
      in >> job.config;
    } catch (const std::exception& e) {
      std::cerr << path << ": invalid JSON: " << e.what() << "\n";
      return 4;
    }
    if (have_seed) job.config["seed"] = seed_override;
    std::string name = job.config.value("name", job.config.value("scenario", "scenario"));
    if (!output_root.empty())
      job.output_dir = output_root + "/" + name;
    else
      job.output_dir = job.config.value("output", std::string("out/") + name);
    joblist.push_back(std::move(job));
  }

  std::atomic<size_t> next{0};
  std::mutex print_mutex;
  std::atomic<int> worst{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= joblist.size()) return;
      const int code = run_job(joblist[i]);
      joblist[i].exit_code = code;
      int cur = worst.load();
      while (code > cur && !worst.compare_exchange_weak(cur, code)) {
      }
      std::lock_guard<std::mutex> lock(print_mutex);
      std::cout << joblist[i].message << "\n";
    }
  };

  if (jobs == 1 || joblist.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return worst.load();
}
