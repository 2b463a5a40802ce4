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

#pragma once

#include <optional>

#include "mrac/fl/loop.hpp"
#include "mrac/harness/metrics.hpp"
#include "mrac/harness/scenario.hpp"
#include "mrac/mimo/loop.hpp"
#include "mrac/siso/loop.hpp"

namespace mrac::harness {

/**
 * @brief A scenario resolved into exactly one module run configuration.
 *
 * Oracle quantities (theta*, K_p, reference parameters) are computed only when
 * the scenario has test_mode on; they then feed the Lyapunov monitor, the
 * theta_scale initialization and nominal mode.
 */
struct Prepared {
  Scenario scenario;
  std::optional<siso::SisoRunConfig> siso;
  std::optional<mimo::MimoRunConfig> mimo;
  std::optional<fl::FlRunConfig> fl;
  MetricsOptions metrics;
  bool oracle_attached = false;
};

/// Throws ValidationError naming the offending field.
Prepared prepare(const Scenario& sc);

struct RunResult {
  SimTrace trace;
  MetricsReport report;
};

RunResult run_prepared(const Prepared& p);
RunResult run_experiment(const Scenario& sc);

}  // namespace mrac::harness
