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

#include <vector>

#include <Eigen/Dense>

#include "mrac/sim/closed_loop.hpp"

namespace mrac::oracle {

/// |rho*| th^T Gamma^{-1} th + rho~^2 / gamma with th = theta - theta*.
LyapunovFn siso_lyapunov(Eigen::VectorXd theta_star, double rho_star, const Eigen::MatrixXd& Gamma, double gamma);

/// tr[Th Gp Th^T] + tr[Ps^T Gamma^{-1} Ps], Gp = K_p^T S_p^{-1}.
LyapunovFn mimo_gradient_lyapunov(Eigen::MatrixXd Theta_star, const Eigen::MatrixXd& Kp, const Eigen::MatrixXd& Sp,
                                  const Eigen::MatrixXd& Gamma);

/// e^T P e + tr[Th M_s^{-1} Th^T], M_s = K_p^{-1} S.
LyapunovFn rd1_lyapunov(Eigen::MatrixXd Theta_star, const Eigen::MatrixXd& Kp, const Eigen::MatrixXd& S,
                        Eigen::MatrixXd P);

/// One column of the per-output law: 0.5 th_i^T Gamma_i^{-1} th_i with th_i = theta_i* - theta_i.
double fl_column_lyapunov(const Eigen::MatrixXd& Theta_star, const Eigen::MatrixXd& Gamma_i, const Eigen::MatrixXd& Theta,
                          Eigen::Index column);

/// Sum of the column functions.
LyapunovFn fl_lyapunov(Eigen::MatrixXd Theta_star, std::vector<Eigen::MatrixXd> Gamma);

}  // namespace mrac::oracle
