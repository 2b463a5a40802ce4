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

#include <Eigen/Dense>

#include "mrac/lti/time_domain.hpp"

namespace mrac {

struct TraceRow {
  double t = 0.0;
  Eigen::VectorXd y, ym, e, u, eps;
  double m = 1.0;            ///< normalization; max over columns for per-column laws
  double V = 0.0;            ///< Lyapunov value, NaN when no oracle is attached
  double theta_norm = 0.0;   ///< Frobenius norm of the controller parameter estimate
  double psi_norm = 0.0;     ///< norm of the rho / Psi estimate (0 when absent)
  double eps_norm_sq = 0.0;  ///< sum_i eps_i^2 / m_i^2
  double dtheta_sq = 0.0;    ///< squared parameter increment from the previous row
};

struct GuardEvent {
  Eigen::Index step = 0;
  double t = 0.0;
  std::string message;
};

/**
 * @brief Uniform-grid record of one closed-loop run.
 *
 * Row k is sampled at t = k * domain.step before the state advances. A guard
 * abort leaves the rows recorded so far and one GuardEvent.
 */
struct SimTrace {
  Eigen::Index outputs = 0;
  Eigen::Index inputs = 0;
  TimeDomain domain;
  std::vector<TraceRow> rows;
  std::vector<GuardEvent> guard_events;
  bool aborted = false;

  /// t, y_1..y_M, ym_1..ym_M, e_1..e_M, u_1..u_M, m, eps_1..eps_M, V, theta_norm
  std::vector<std::string> column_names() const;
  bool has_lyapunov() const;
};

}  // namespace mrac
