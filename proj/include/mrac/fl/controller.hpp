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
#include <vector>

#include <Eigen/Dense>

#include "mrac/lti/interactor.hpp"
#include "mrac/lti/rational_filter.hpp"

namespace mrac::fl {

using VectorMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatrixMap = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using LeaderMap = std::function<Eigen::VectorXd(const Eigen::VectorXd& xm, const Eigen::VectorXd& um)>;

/**
 * @brief Known structure of a feedback-linearizable follower and its leader.
 *
 * This is all the controller sees: regressor evaluators and the output maps.
 * The true parameters live elsewhere. Evaluators must be pure.
 *
 *   b(x) = Theta1*^T omega1(x)
 *   A(x) u = Theta2*^T omega2(x, u),  omega2(x, u) = W2(x) u
 *   (Lie-derivative part of xi_m(s)[y] beyond diag{alpha_i,rho_i} y) = Theta3*^T omega3(x)
 *   xi_m(s)[y_m] = ThetaM*^T omegaM(x_m, u_m)
 */
struct FlStructure {
  Eigen::Index n = 0;   ///< follower state dimension
  Eigen::Index M = 0;   ///< outputs = inputs
  Eigen::Index nm = 0;  ///< leader state dimension
  Eigen::Index Mu = 0;  ///< leader inputs
  DiagonalInteractor xi;  ///< d_i(s); deg d_i = rho_i
  Eigen::Index dim1 = 0, dim2 = 0, dim3 = 0, dimm = 0;
  VectorMap output;    ///< y = h(x)
  VectorMap omega1;    ///< dim1
  MatrixMap w2;        ///< dim2 x M
  VectorMap omega3;    ///< dim3
  LeaderMap omega_m;   ///< dimm

  Eigen::Index omega_size() const { return dim1 + dim2 + dim3 + dimm; }
  void validate() const;
};

/// Stacked estimate Theta = [Theta1; Theta2; Theta3; ThetaM], omega_size x M.
struct FlParams {
  Eigen::MatrixXd Theta1, Theta2, Theta3, ThetaM;

  static FlParams zeros(const FlStructure& s);
  static FlParams from_stacked(const FlStructure& s, const Eigen::MatrixXd& Theta);
  Eigen::MatrixXd stacked() const;
};

struct FlEstimates {
  Eigen::VectorXd b;
  Eigen::MatrixXd A;
};

/// b_hat = Theta1^T omega1(x), A_hat = Theta2^T W2(x).
FlEstimates fl_assemble_estimates(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x);

/**
 * @brief u = A_hat^{-1} (v - b_hat).
 *
 * Throws SingularityGuard when the smallest singular value of A_hat is below `guard`.
 */
Eigen::VectorXd fl_control(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                           double guard = 1e-6);
Eigen::VectorXd fl_control(const FlEstimates& est, const Eigen::VectorXd& v, double guard = 1e-6);

/// v = ThetaM^T omegaM(x_m, u_m) - Theta3^T omega3(x) - diag{alpha_i,rho_i} y.
Eigen::VectorXd fl_v_signal(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& xm, const Eigen::VectorXd& um);

/// omega = [omega1; W2 u; omega3; -omegaM].
Eigen::VectorXd fl_omega(const FlStructure& s, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& xm, const Eigen::VectorXd& um);

struct FlColumnFrame {
  Eigen::VectorXd zeta;
  double xi = 0.0;
  double epsilon = 0.0;
  double m = 1.0;
  double m2 = 1.0;
};

/// xi_i = w_i[theta_i^T omega] - theta_i^T zeta_i, eps_i = e_i + xi_i, m_i^2 = 1 + zeta_i^T zeta_i.
FlColumnFrame column_frame_from(ConstVecRef theta_i, ConstVecRef zeta_i, double w_theta_omega, double e_i);

/**
 * @brief Per-column filters w_i = 1/d_i(s) on omega and on theta_i^T omega.
 */
class FlEstimator {
 public:
  FlEstimator(const DiagonalInteractor& xi, Eigen::Index dim, TimeDomain domain = TimeDomain::continuous());
  std::vector<FlColumnFrame> column_frames(const Eigen::MatrixXd& Theta, const Eigen::VectorXd& omega,
                                           const Eigen::VectorXd& e);

 private:
  std::vector<RationalFilter> zeta_, wto_;
};

/// dtheta_i/dt = Gamma_i zeta_i eps_i / m_i^2, one column per output.
Eigen::MatrixXd fl_gradient_rate(const std::vector<Eigen::MatrixXd>& Gamma, const std::vector<FlColumnFrame>& frames);
/// Explicit step of length h with the frames held.
Eigen::MatrixXd fl_gradient_step(const Eigen::MatrixXd& Theta, const std::vector<Eigen::MatrixXd>& Gamma,
                                 const std::vector<FlColumnFrame>& frames, double h);

}  // namespace mrac::fl
