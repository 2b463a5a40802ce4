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

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mrac/fl/controller.hpp"
#include "mrac/lti/signal.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac::fl {

/// x' = f(x, u), y = h(x).
struct NonlinearSystem {
  Eigen::Index n = 0;
  Eigen::Index inputs = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> dynamics;
  VectorMap output;
};

/// Follower, leader and the leader's input generator.
struct FlWorld {
  NonlinearSystem follower;
  NonlinearSystem leader;
  ReferenceInput input;
};

/**
 * @brief Continuous-time leader-follower loop.
 *
 * Packed state: [x, x_m, per-column (1/d_i on omega, 1/d_i on theta_i^T omega), Theta].
 */
class FlLoop : public ClosedLoop {
 public:
  FlLoop(FlWorld world, FlStructure structure, std::vector<Eigen::MatrixXd> Gamma, double guard, bool adaptive,
         TimeDomain domain);

  TimeDomain domain() const override { return domain_; }
  Eigen::Index state_size() const override { return size_; }
  Eigen::Index outputs() const override { return s_.M; }
  Eigen::Index inputs() const override { return s_.M; }
  void evaluate(double t, const Eigen::VectorXd& X, LoopSignals& sig) const override;
  void advance(double t, const Eigen::VectorXd& X, const LoopSignals& sig, Eigen::VectorXd& out) const override;

  Eigen::VectorXd pack(const Eigen::VectorXd& x0, const Eigen::VectorXd& xm0, const Eigen::MatrixXd& Theta0) const;

 private:
  FlWorld world_;
  FlStructure s_;
  std::vector<Eigen::MatrixXd> Gamma_;
  double guard_;
  bool adaptive_;
  TimeDomain domain_;
  Eigen::Index dim_;
  std::vector<RationalFilter> zeta_, wto_;
  std::vector<Eigen::Index> o_zeta_, o_wto_;
  Eigen::Index o_theta_, size_;
};

struct FlRunConfig {
  FlWorld world;
  FlStructure structure;
  std::vector<Eigen::MatrixXd> Gamma;  ///< per column; empty: identity
  double guard = 1e-6;
  bool adaptive = true;
  Eigen::MatrixXd Theta0;  ///< stacked; empty: zero
  Eigen::VectorXd x0, xm0;
  double step = 1e-3;
  Eigen::Index steps = 1000;
  LyapunovFn lyapunov;
  StepObserver observer;
};

SimTrace fl_run(const FlRunConfig& cfg);

}  // namespace mrac::fl
