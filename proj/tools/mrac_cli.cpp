/*
 Copyright 2026 The refmrac Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// Command-line front end: run scenarios, list benchmarks, validate scenario files.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mrac/error.hpp"
#include "mrac/harness/output.hpp"
#include "mrac/harness/runner.hpp"
#include "mrac/harness/scenario.hpp"

namespace {

using namespace mrac;
using namespace mrac::harness;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitGuard = 2;

struct Outcome {
  std::string line;
  int code = kExitOk;
};

struct Overrides {
  std::optional<double> horizon, step;
  std::optional<std::uint64_t> seed;
  std::string mode;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("MRAC_OUT_DIR"); env && *env) return env;
  return "mrac_out";
}

Outcome run_one(const std::string& path, const Overrides& ov, const std::string& out_root) {
  try {
    Scenario sc = load_scenario(path);
    if (ov.horizon) sc.horizon = *ov.horizon;
    if (ov.step) sc.step = *ov.step;
    if (ov.seed) sc.seed = *ov.seed;
    if (ov.mode == "nominal") sc.mode = Mode::Nominal;
    if (ov.mode == "adaptive") sc.mode = Mode::Adaptive;
    const RunResult r = run_experiment(sc);
    const std::string dir = (std::filesystem::path(out_root) / sc.name).string();
    emit_outputs(r.trace, r.report, dir);
    Outcome o;
    o.line = sc.name + ": " + (r.report.guard_aborted ? "guard abort" : r.report.converged ? "converged" : "not converged") +
             " tail_rms_e=" + format_double(r.report.tail_rms_e) +
             (r.report.lyapunov_checked ? " lyapunov_violations=" + std::to_string(r.report.lyapunov_violations) : "") +
             " -> " + dir;
    o.code = r.report.guard_aborted ? kExitGuard : r.report.converged ? kExitOk : kExitError;
    return o;
  } catch (const std::exception& e) {
    return {path + ": error: " + e.what(), kExitError};
  }
}

int combine(const std::vector<Outcome>& outs) {
  bool guard = false, error = false;
  for (const auto& o : outs) {
    guard = guard || o.code == kExitGuard;
    error = error || o.code == kExitError;
  }
  if (error) return kExitError;
  return guard ? kExitGuard : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive output tracking with an unknown reference model: simulation harness"};
  app.require_subcommand(1);

  std::vector<std::string> scenarios;
  std::string out_dir;
  Overrides ov;
  double horizon = 0.0, step = 0.0;
  std::uint64_t seed = 0;
  unsigned jobs = 0;

  auto* run = app.add_subcommand("run", "run one or more scenarios and write trace.csv, trace_long.csv, report.json");
  run->add_option("--scenario", scenarios, "scenario file (repeatable)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (default: $MRAC_OUT_DIR or ./mrac_out)");
  auto* h_opt = run->add_option("--horizon", horizon, "samples (DT) or time units (CT)")->check(CLI::PositiveNumber);
  auto* s_opt = run->add_option("--step", step, "CT integration step")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "seed for randomized initial conditions");
  run->add_option("--mode", ov.mode, "nominal or adaptive")->check(CLI::IsMember({"nominal", "adaptive"}));
  run->add_option("--jobs", jobs, "parallel runs (default: hardware threads)");

  auto* list = app.add_subcommand("list-benchmarks", "print the built-in benchmark ids");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and check a scenario without running it");
  validate->add_option("--scenario", validate_path, "scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  if (list->parsed()) {
    for (const auto& id : benchmark_ids()) std::cout << id << '\n';
    return kExitOk;
  }

  if (validate->parsed()) {
    try {
      const Scenario sc = load_scenario(validate_path);
      validate_scenario(sc);
      std::cout << validate_path << ": ok (" << sc.name << ")\n";
      return kExitOk;
    } catch (const std::exception& e) {
      std::cerr << validate_path << ": " << e.what() << '\n';
      return kExitError;
    }
  }

  if (*h_opt) ov.horizon = horizon;
  if (*s_opt) ov.step = step;
  if (*seed_opt) ov.seed = seed;
  const std::string root = out_dir.empty() ? default_out_dir() : out_dir;

  std::vector<Outcome> outs(scenarios.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(jobs ? jobs : hw, static_cast<unsigned>(scenarios.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < scenarios.size(); i = next++) outs[i] = run_one(scenarios[i], ov, root);
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& o : outs) (o.code == kExitError ? std::cerr : std::cout) << o.line << '\n';
  return combine(outs);
}
