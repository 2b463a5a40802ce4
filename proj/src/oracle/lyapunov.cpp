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

#include "mrac/oracle/lyapunov.hpp"

#include <cmath>
#include <utility>

namespace mrac::oracle {

LyapunovFn siso_lyapunov(Eigen::VectorXd theta_star, double rho_star, const Eigen::MatrixXd& Gamma, double gamma) {
  Eigen::MatrixXd Ginv = Gamma.inverse();
  return [ts = std::move(theta_star), rho_star, Ginv = std::move(Ginv), gamma](const LoopSignals& s) {
    const Eigen::VectorXd th = s.theta.col(0) - ts;
    const double rt = s.psi(0, 0) - rho_star;
    return std::abs(rho_star) * th.dot(Ginv * th) + rt * rt / gamma;
  };
}

LyapunovFn mimo_gradient_lyapunov(Eigen::MatrixXd Theta_star, const Eigen::MatrixXd& Kp, const Eigen::MatrixXd& Sp,
                                  const Eigen::MatrixXd& Gamma) {
  Eigen::MatrixXd Gp = Kp.transpose() * Sp.inverse();
  Gp = 0.5 * (Gp + Gp.transpose());
  Eigen::MatrixXd Ginv = Gamma.inverse();
  return [Ts = std::move(Theta_star), Kp, Gp = std::move(Gp), Ginv = std::move(Ginv)](const LoopSignals& s) {
    const Eigen::MatrixXd Th = s.theta - Ts;
    const Eigen::MatrixXd Ps = s.psi - Kp;
    return (Th * Gp * Th.transpose()).trace() + (Ps.transpose() * Ginv * Ps).trace();
  };
}

LyapunovFn rd1_lyapunov(Eigen::MatrixXd Theta_star, const Eigen::MatrixXd& Kp, const Eigen::MatrixXd& S,
                        Eigen::MatrixXd P) {
  Eigen::MatrixXd Msinv = (Kp.inverse() * S).inverse();
  return [Ts = std::move(Theta_star), Msinv = std::move(Msinv), P = std::move(P)](const LoopSignals& s) {
    const Eigen::MatrixXd Th = s.theta - Ts;
    return s.e.dot(P * s.e) + (Th * Msinv * Th.transpose()).trace();
  };
}

double fl_column_lyapunov(const Eigen::MatrixXd& Theta_star, const Eigen::MatrixXd& Gamma_i, const Eigen::MatrixXd& Theta,
                          Eigen::Index column) {
  const Eigen::VectorXd th = Theta_star.col(column) - Theta.col(column);
  return 0.5 * th.dot(Gamma_i.ldlt().solve(th));
}

LyapunovFn fl_lyapunov(Eigen::MatrixXd Theta_star, std::vector<Eigen::MatrixXd> Gamma) {
  return [Ts = std::move(Theta_star), G = std::move(Gamma)](const LoopSignals& s) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < Ts.cols(); ++i) {
      v += fl_column_lyapunov(Ts, G[static_cast<std::size_t>(i)], s.theta, i);
    }
    return v;
  };
}

}  // namespace mrac::oracle
