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

#include <Eigen/Dense>

#include "mrac/lti/rational_filter.hpp"
#include "mrac/siso/adaptive.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::siso {

/**
 * @brief u = theta^T omega with optional normalized gradient adaptation.
 *
 * Controller state: [a/Lambda on u, a/Lambda on y, a/Lambda_e on u_m,
 * a/Lambda_e on y_m, W_m on omega, W_m on u, theta, rho]. Banks a structure
 * does not use have zero size.
 */
class SisoController : public LinearController {
 public:
  SisoController(SisoDesign design, Eigen::MatrixXd Gamma, double gamma, bool adaptive);

  Eigen::Index state_size() const override { return size_; }
  void evaluate(const Measurement& meas, ConstVecRef c, LoopSignals& s) const override;
  void advance(const Measurement& meas, ConstVecRef c, const LoopSignals& s, VecRef out) const override;

  /// Zero filter states, given estimates.
  Eigen::VectorXd initial_state(const Eigen::VectorXd& theta0, double rho0) const;
  const SisoDesign& design() const { return design_; }
  Eigen::Index regressor_dim() const { return dim_; }

 private:
  SisoDesign design_;
  Eigen::MatrixXd Gamma_;
  double gamma_;
  bool adaptive_;
  Eigen::Index dim_;
  FilterBank bank_u_, bank_y_, bank_um_, bank_ym_;
  RationalFilter wm_zeta_, wm_u_;
  Eigen::Index o_u_, o_y_, o_um_, o_ym_, o_zeta_, o_wu_, o_theta_, o_rho_, size_;
};

struct SisoRunConfig {
  LinearWorld world;
  SisoDesign design;
  Eigen::MatrixXd Gamma;  ///< empty: (1/kp_bound) I
  double gamma = 1.0;
  bool adaptive = true;
  Eigen::VectorXd theta0;  ///< empty: zero
  double rho0 = 0.0;       ///< 0: sign(k_p)
  Eigen::VectorXd x0, xm0; ///< empty: zero
  Eigen::Index steps = 1000;
  LyapunovFn lyapunov;
  StepObserver observer;
};

/// Runs the closed loop; frozen parameters when `adaptive` is false.
SimTrace siso_run(const SisoRunConfig& cfg);

}  // namespace mrac::siso
