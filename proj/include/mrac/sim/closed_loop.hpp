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

#include <functional>

#include <Eigen/Dense>

#include "mrac/lti/rational_filter.hpp"
#include "mrac/lti/time_domain.hpp"
#include "mrac/sim/trace.hpp"

namespace mrac {

/**
 * @brief Algebraic signals of a closed loop at one instant.
 *
 * Filled by ClosedLoop::evaluate. Single-normalization laws use one column of
 * `zeta` and one entry of `m`; per-column laws use one of each per output.
 */
struct LoopSignals {
  Eigen::VectorXd y, ym, e, u, um;
  Eigen::VectorXd omega;
  Eigen::MatrixXd zeta;
  Eigen::VectorXd xi, eps, m, m2;
  Eigen::MatrixXd theta;  ///< parameter estimate, regressor rows by control columns
  Eigen::MatrixXd psi;    ///< rho (1 x 1) or Psi; empty when the law has none
};

/**
 * @brief Closed loop over a packed state vector X.
 *
 * `advance` returns X(t+1) in DT and dX/dt in CT, so one simulator covers
 * both domains.
 */
class ClosedLoop {
 public:
  virtual ~ClosedLoop() = default;
  virtual TimeDomain domain() const = 0;
  virtual Eigen::Index state_size() const = 0;
  virtual Eigen::Index outputs() const = 0;
  virtual Eigen::Index inputs() const = 0;
  virtual void evaluate(double t, const Eigen::VectorXd& X, LoopSignals& s) const = 0;
  virtual void advance(double t, const Eigen::VectorXd& X, const LoopSignals& s, Eigen::VectorXd& out) const = 0;
};

/// Lyapunov function evaluated from the instantaneous signals (test mode only).
using LyapunovFn = std::function<double(const LoopSignals&)>;
using StepObserver = std::function<void(Eigen::Index step, double t, const LoopSignals&)>;

struct SimOptions {
  Eigen::Index steps = 0;
  LyapunovFn lyapunov;
  StepObserver observer;
};

/// DT: exact recursion. CT: classical RK4 over the whole packed state.
SimTrace simulate(const ClosedLoop& loop, Eigen::VectorXd X0, const SimOptions& opts);

/// Plain left-to-right dot product; keeps results independent of memory alignment.
inline double seq_dot(ConstVecRef a, ConstVecRef b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

}  // namespace mrac
