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

#include <Eigen/Dense>

#include "mrac/lti/interactor.hpp"
#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/rational_filter.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::mimo {

enum class MimoLaw { GradientBasic, Rd1Lyapunov };

/**
 * @brief Controller-side design data for the unified CT/DT MIMO schemes.
 */
struct MimoDesign {
  Structure structure = Structure::SF_Xm;
  MimoLaw law = MimoLaw::GradientBasic;
  TimeDomain domain;
  Eigen::Index n = 1;   ///< plant order
  Eigen::Index nm = 1;  ///< reference-model order
  Eigen::Index M = 1;   ///< plant inputs = outputs
  Eigen::Index Mu = 1;  ///< reference-model inputs
  DiagonalInteractor xi;
  Polynomial f;         ///< h(D) = 1/f(D), deg f >= max deg d_i
  Polynomial lambda;    ///< degree nu-1 (output feedback)
  Polynomial lambda_e;  ///< degree nm-M (y_m structures)

  void validate() const;
  /// nu - 1 = deg lambda; 0 for state feedback.
  Eigen::Index of_blocks() const;
  Eigen::Index ym_blocks() const;
};

Eigen::Index regressor_size(const MimoDesign& d);

struct MimoRegressorSignals {
  Eigen::VectorXd x, xm, y, ym, um;
  Eigen::VectorXd w1, w2;    ///< A(D)/Lambda [u], [y]
  Eigen::VectorXd wum, wym;  ///< A(D)/Lambda_e [u_m], [y_m]
};

/// Same block order as the SISO regressor, with M-wide blocks.
Eigen::VectorXd mimo_regressor(const MimoDesign& d, const MimoRegressorSignals& sig);

/**
 * @brief Theta (regressor rows x M), Psi (M x M), adaptation gain Gamma and S_p.
 *
 * `make` checks Gamma SPD, and Gamma < 2I in DT (GainBoundViolation).
 */
struct MimoGradientState {
  Eigen::MatrixXd Theta;
  Eigen::MatrixXd Psi;
  Eigen::MatrixXd Gamma;
  Eigen::MatrixXd Sp;

  static MimoGradientState make(Eigen::MatrixXd Theta, Eigen::MatrixXd Psi, Eigen::MatrixXd Gamma, Eigen::MatrixXd Sp,
                                TimeDomain domain);
};

void check_gains(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& Sp, Eigen::Index M, TimeDomain domain);

struct MimoFrame {
  Eigen::VectorXd omega, zeta, ebar, xi, epsilon;
  double m = 1.0;
  double m2 = 1.0;
};

/// xi = Theta^T zeta - h[u], eps = ebar + Psi xi, m^2 = 1 + zeta^T zeta + xi^T xi.
MimoFrame frame_from(const MimoGradientState& st, const Eigen::VectorXd& omega, const Eigen::VectorXd& zeta,
                     const Eigen::VectorXd& hu, const Eigen::VectorXd& ebar);

/**
 * @brief Stateful filters of the estimator: diag{d_i/f} on e, 1/f on omega and on Theta^T omega.
 */
class MimoEstimator {
 public:
  MimoEstimator(const DiagonalInteractor& xi, const Polynomial& f, Eigen::Index dim, TimeDomain domain);
  MimoFrame estimation_frame(const MimoGradientState& st, const Eigen::VectorXd& omega, const Eigen::VectorXd& e);

 private:
  RationalFilter ebar_, zeta_, hu_;
};

/// DT increments or CT derivatives of (Theta, Psi): -zeta (S_p eps)^T / m^2 and -Gamma eps xi^T / m^2.
void mimo_update(ConstVecRef zeta, ConstVecRef xi, ConstVecRef eps, double m2, const Eigen::MatrixXd& Gamma,
                 const Eigen::MatrixXd& Sp, const Eigen::Ref<const Eigen::MatrixXd>& Theta,
                 const Eigen::Ref<const Eigen::MatrixXd>& Psi, bool increment, Eigen::Ref<Eigen::MatrixXd> Theta_out,
                 Eigen::Ref<Eigen::MatrixXd> Psi_out);

/// DT: one exact update. CT: one explicit step of length domain.step with the frame held.
MimoGradientState mimo_gradient_step(const MimoGradientState& st, const MimoFrame& f, TimeDomain domain);

/**
 * @brief Lyapunov-based law for interactors sI + P0 (CT only).
 *
 * P solves P A0 + A0^T P = -Q with A0 = -P0.
 */
struct Rd1State {
  Eigen::MatrixXd P, Q, S, Theta;
  Eigen::VectorXd p0;

  static Rd1State make(const DiagonalInteractor& xi, Eigen::MatrixXd Q, Eigen::MatrixXd S, Eigen::MatrixXd Theta);
};

/// dTheta/dt = -omega e^T P S.
Eigen::MatrixXd rd1_rate(const Rd1State& st, const Eigen::VectorXd& e, const Eigen::VectorXd& omega);
/// Explicit step of length domain.step. Throws DomainMismatch in DT.
Rd1State rd1_step(const Rd1State& st, const Eigen::VectorXd& e, const Eigen::VectorXd& omega, TimeDomain domain);

}  // namespace mrac::mimo
