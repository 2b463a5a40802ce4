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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mrac/sim/trace.hpp"

namespace mrac::harness {

/// How a Lyapunov trace is judged.
enum class LyapunovRule {
  None,
  Increment,   ///< DT: V(t+1) - V(t) <= slack
  Derivative,  ///< CT: (V(t+h) - V(t)) / h <= slack * max(V, 1)
};

struct MetricsOptions {
  double tail_fraction = 0.1;
  double tolerance = 1e-3;
  LyapunovRule rule = LyapunovRule::None;
  double slack = 0.0;  ///< default: 1e-12 for Increment, 1e-6 for Derivative
};

struct MetricsReport {
  std::string name;
  std::string module;
  std::string mode;
  bool test_mode = false;
  long long samples = 0;
  double step = 1.0;
  double tail_fraction = 0.1;
  double tolerance = 0.0;
  double tail_rms_e = 0.0;
  double sup_theta_norm = 0.0;
  double sup_psi_norm = 0.0;
  bool lyapunov_checked = false;
  long long lyapunov_violations = 0;
  double max_lyapunov_rate = 0.0;  ///< largest increment (DT) or finite-difference derivative (CT)
  double l2_total = 0.0;           ///< sum (DT) or integral (CT) of |eps/m|^2
  double l2_tail = 0.0;            ///< same over the tail window
  double dtheta_total = 0.0;       ///< sum of squared parameter increments
  double dtheta_tail = 0.0;
  bool converged = false;
  bool guard_aborted = false;
  std::vector<GuardEvent> guard_events;
};

MetricsReport compute_metrics(const SimTrace& trace, const MetricsOptions& opts);

nlohmann::json report_to_json(const MetricsReport& r);
/// Inverse of report_to_json; throws ParseError on malformed input.
MetricsReport report_from_json(const nlohmann::json& doc);

}  // namespace mrac::harness
