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

#include "mrac/fl/controller.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "mrac/error.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac::fl {

void FlStructure::validate() const {
  if (n < 1 || M < 1 || M > n) throw Error(ErrorCode::ValidationError, "need 1 <= M <= n", "plant");
  if (xi.size() != M) throw Error(ErrorCode::DimensionMismatch, "interactor must have M rows", "interactor");
  if (!output || !omega1 || !w2 || !omega3 || !omega_m)
    throw Error(ErrorCode::ValidationError, "all regressor evaluators must be provided", "plant");
}

FlParams FlParams::zeros(const FlStructure& s) {
  return {Eigen::MatrixXd::Zero(s.dim1, s.M), Eigen::MatrixXd::Zero(s.dim2, s.M), Eigen::MatrixXd::Zero(s.dim3, s.M),
          Eigen::MatrixXd::Zero(s.dimm, s.M)};
}

FlParams FlParams::from_stacked(const FlStructure& s, const Eigen::MatrixXd& T) {
  if (T.rows() != s.omega_size() || T.cols() != s.M)
    throw Error(ErrorCode::DimensionMismatch, "stacked parameter matrix has the wrong shape", "theta0");
  FlParams p;
  p.Theta1 = T.topRows(s.dim1);
  p.Theta2 = T.middleRows(s.dim1, s.dim2);
  p.Theta3 = T.middleRows(s.dim1 + s.dim2, s.dim3);
  p.ThetaM = T.bottomRows(s.dimm);
  return p;
}

Eigen::MatrixXd FlParams::stacked() const {
  Eigen::MatrixXd T(Theta1.rows() + Theta2.rows() + Theta3.rows() + ThetaM.rows(), Theta1.cols());
  T << Theta1, Theta2, Theta3, ThetaM;
  return T;
}

FlEstimates fl_assemble_estimates(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x) {
  return {p.Theta1.transpose() * s.omega1(x), p.Theta2.transpose() * s.w2(x)};
}

Eigen::VectorXd fl_control(const FlEstimates& est, const Eigen::VectorXd& v, double guard) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(est.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin >= guard))
    throw Error(ErrorCode::SingularityGuard,
                "smallest singular value of the estimated decoupling matrix is " + std::to_string(smin) +
                    ", below the guard " + std::to_string(guard));
  return svd.solve(v - est.b);
}

Eigen::VectorXd fl_control(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                           double guard) {
  return fl_control(fl_assemble_estimates(s, p, x), v, guard);
}

Eigen::VectorXd fl_v_signal(const FlStructure& s, const FlParams& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& xm, const Eigen::VectorXd& um) {
  Eigen::VectorXd v = p.ThetaM.transpose() * s.omega_m(xm, um) - p.Theta3.transpose() * s.omega3(x);
  for (Eigen::Index i = 0; i < s.M; ++i) v(i) -= s.xi.row(i).coeff(0) * y(i);
  return v;
}

Eigen::VectorXd fl_omega(const FlStructure& s, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& xm, const Eigen::VectorXd& um) {
  Eigen::VectorXd w(s.omega_size());
  w << s.omega1(x), s.w2(x) * u, s.omega3(x), -s.omega_m(xm, um);
  return w;
}

FlColumnFrame column_frame_from(ConstVecRef theta_i, ConstVecRef zeta_i, double w_theta_omega, double e_i) {
  FlColumnFrame f;
  f.zeta = zeta_i;
  f.xi = w_theta_omega - seq_dot(theta_i, zeta_i);
  f.epsilon = e_i + f.xi;
  f.m2 = 1.0 + seq_dot(zeta_i, zeta_i);
  f.m = std::sqrt(f.m2);
  return f;
}

FlEstimator::FlEstimator(const DiagonalInteractor& xi, Eigen::Index dim, TimeDomain domain) {
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    zeta_.emplace_back(Polynomial::constant(1.0), xi.row(i), dim, domain);
    wto_.emplace_back(Polynomial::constant(1.0), xi.row(i), 1, domain);
  }
}

std::vector<FlColumnFrame> FlEstimator::column_frames(const Eigen::MatrixXd& Theta, const Eigen::VectorXd& omega,
                                                      const Eigen::VectorXd& e) {
  const Eigen::Index M = static_cast<Eigen::Index>(zeta_.size());
  if (Theta.cols() != M || e.size() != M || Theta.rows() != omega.size() || omega.size() != zeta_[0].width())
    throw Error(ErrorCode::DimensionMismatch, "Theta, omega and e must match the estimator dimensions", "omega");
  std::vector<FlColumnFrame> out;
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Eigen::VectorXd to = Eigen::VectorXd::Constant(1, seq_dot(Theta.col(i), omega));
    const Eigen::VectorXd zeta = zeta_[k].step(omega);
    const double w = wto_[k].step(to)(0);
    out.push_back(column_frame_from(Theta.col(i), zeta, w, e(i)));
  }
  return out;
}

Eigen::MatrixXd fl_gradient_rate(const std::vector<Eigen::MatrixXd>& Gamma, const std::vector<FlColumnFrame>& frames) {
  if (Gamma.size() != frames.size()) throw Error(ErrorCode::DimensionMismatch, "one gain per column", "Gamma");
  const Eigen::Index dim = frames.empty() ? 0 : frames[0].zeta.size();
  Eigen::MatrixXd rate(dim, static_cast<Eigen::Index>(frames.size()));
  for (std::size_t i = 0; i < frames.size(); ++i)
    rate.col(static_cast<Eigen::Index>(i)) = Gamma[i] * frames[i].zeta * (frames[i].epsilon / frames[i].m2);
  return rate;
}

Eigen::MatrixXd fl_gradient_step(const Eigen::MatrixXd& Theta, const std::vector<Eigen::MatrixXd>& Gamma,
                                 const std::vector<FlColumnFrame>& frames, double h) {
  return Theta + h * fl_gradient_rate(Gamma, frames);
}

}  // namespace mrac::fl
