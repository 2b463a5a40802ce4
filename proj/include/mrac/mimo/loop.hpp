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
#include "mrac/mimo/adaptive.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::mimo {

/**
 * @brief u = Theta^T omega with the gradient law or the relative-degree-one law.
 *
 * Controller state: [A/Lambda on u, A/Lambda on y, A/Lambda_e on u_m,
 * A/Lambda_e on y_m, 1/f on omega, 1/f on u, Theta, Psi, diag{d_i/f} on e].
 * The relative-degree-one law carries only the banks and Theta.
 */
class MimoController : public LinearController {
 public:
  struct Gains {
    Eigen::MatrixXd Gamma;  ///< gradient law
    Eigen::MatrixXd Sp;     ///< gradient law S_p, or S for the rd-1 law
    Eigen::MatrixXd Q;      ///< rd-1 law
  };

  MimoController(MimoDesign design, Gains gains, bool adaptive);

  Eigen::Index state_size() const override { return size_; }
  void evaluate(const Measurement& meas, ConstVecRef c, LoopSignals& s) const override;
  void advance(const Measurement& meas, ConstVecRef c, const LoopSignals& s, VecRef out) const override;

  Eigen::VectorXd initial_state(const Eigen::MatrixXd& Theta0, const Eigen::MatrixXd& Psi0) const;
  Eigen::Index regressor_dim() const { return dim_; }
  const MimoDesign& design() const { return design_; }
  /// Lyapunov matrix of the rd-1 law (empty for the gradient law).
  const Eigen::MatrixXd& rd1_P() const { return P_; }

 private:
  MimoDesign design_;
  Gains gains_;
  bool adaptive_;
  Eigen::Index dim_, M_;
  Eigen::MatrixXd P_, PS_;
  FilterBank bank_u_, bank_y_, bank_um_, bank_ym_;
  RationalFilter zeta_, hu_, ebar_;
  Eigen::Index o_u_, o_y_, o_um_, o_ym_, o_zeta_, o_hu_, o_theta_, o_psi_, o_ebar_, size_;
};

struct MimoRunConfig {
  LinearWorld world;
  MimoDesign design;
  MimoController::Gains gains;
  bool adaptive = true;
  Eigen::MatrixXd Theta0;  ///< empty: zero
  Eigen::MatrixXd Psi0;    ///< empty: identity
  Eigen::VectorXd x0, xm0;
  Eigen::Index steps = 1000;
  LyapunovFn lyapunov;
  StepObserver observer;
};

SimTrace mimo_run(const MimoRunConfig& cfg);

}  // namespace mrac::mimo
