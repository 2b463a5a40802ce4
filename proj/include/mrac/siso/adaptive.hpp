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

#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/rational_filter.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::siso {

/**
 * @brief Controller-side design data for the discrete-time SISO schemes.
 *
 * Contains only what the controller is allowed to know: orders, design
 * polynomials and the sign and bound of the high-frequency gain.
 */
struct SisoDesign {
  Structure structure = Structure::SF_Xm;
  Eigen::Index n = 1;   ///< plant order
  Eigen::Index nm = 1;  ///< reference-model order (Xm structures)
  Polynomial pm;        ///< P_m, monic stable, degree n*
  Polynomial lambda;    ///< Lambda, monic stable, degree n-1 (output feedback)
  Polynomial lambda_e;  ///< Lambda_e, monic stable, degree n-1 (y_m structures)
  int sign_kp = 1;
  double kp_bound = 1.0;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// 2n+1, 3n, 3n or 4n-1 when nm = n.
Eigen::Index regressor_size(const SisoDesign& d);

/// Filtered and raw signals a regressor is assembled from.
struct RegressorSignals {
  Eigen::VectorXd x;    ///< plant state
  Eigen::VectorXd xm;   ///< reference state
  Eigen::VectorXd w1;   ///< a/Lambda [u]
  Eigen::VectorXd w2;   ///< a/Lambda [y]
  Eigen::VectorXd wum;  ///< a/Lambda_e [u_m]
  Eigen::VectorXd wym;  ///< a/Lambda_e [y_m]
  double y = 0.0;
  double ym = 0.0;
  double um = 0.0;
};

/**
 * @brief Structure-specific regressor.
 *
 * SF_Xm [x, x_m, u_m]; SF_Ym [x, w_um, w_ym, y_m, u_m];
 * OF_Xm [w1, w2, y, x_m, u_m]; OF_Ym [w1, w2, y, w_um, w_ym, y_m, u_m].
 */
Eigen::VectorXd build_regressor(const SisoDesign& d, const RegressorSignals& sig);

/**
 * @brief Estimates and gains of the normalized gradient law.
 *
 * Use `make` to get the gain checks: Gamma SPD with Gamma < (2/kp_bound) I and
 * 0 < gamma < 2, else GainBoundViolation.
 */
struct SisoGradientState {
  Eigen::VectorXd theta;
  double rho = 1.0;
  Eigen::MatrixXd Gamma;
  double gamma = 1.0;
  int sign_kp = 1;

  static SisoGradientState make(Eigen::VectorXd theta, double rho, Eigen::MatrixXd Gamma, double gamma, int sign_kp,
                                double kp_bound);
};

void check_gains(const Eigen::MatrixXd& Gamma, double gamma, double kp_bound);

struct SisoRegressorFrame {
  Eigen::VectorXd omega;
  Eigen::VectorXd zeta;
  double xi = 0.0;
  double epsilon = 0.0;
  double m = 1.0;
  double m2 = 1.0;
};

/// xi = theta^T zeta - W_m[theta^T omega], eps = e + rho xi, m^2 = 1 + zeta^T zeta + xi^2.
SisoRegressorFrame frame_from(const SisoGradientState& st, const Eigen::VectorXd& omega, const Eigen::VectorXd& zeta,
                              double wm_u, double e);

/**
 * @brief W_m = 1/P_m filters carried across calls: one on omega, one on theta^T omega.
 */
class SisoEstimator {
 public:
  SisoEstimator(const Polynomial& pm, Eigen::Index dim, TimeDomain domain = TimeDomain::discrete());
  /// Frame at the current step; then advances both filters.
  SisoRegressorFrame estimation_frame(const SisoGradientState& st, const Eigen::VectorXd& omega, double e);

 private:
  RationalFilter zeta_;
  RationalFilter wu_;
};

/// theta+ = theta - Gamma sign(k_p) zeta eps / m^2, rho+ = rho - gamma xi eps / m^2.
SisoGradientState siso_gradient_step(const SisoGradientState& st, const SisoRegressorFrame& f);

/// In-place form of the update shared by the step function and the closed loop.
void siso_update(ConstVecRef theta, double rho, const Eigen::MatrixXd& Gamma, double gamma, int sign_kp,
                 ConstVecRef zeta, double xi, double eps, double m2, VecRef theta_out, double& rho_out);

}  // namespace mrac::siso
