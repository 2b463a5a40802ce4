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

#include "mrac/oracle/fl_benchmark.hpp"

#include <cmath>

namespace mrac::oracle {

FlBenchmark fl_benchmark() {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  FlBenchmark bm;
  bm.id = "fl_leader_follower";
  bm.description = "3-state follower, relative degrees (1,2), tracking a 3-state nonlinear leader";

  FlTruth& T = bm.truth;
  T.theta = Eigen::Vector3d(-1.0, 1.0, -2.0);
  T.a1 = 1.0;
  T.c1 = 0.5;
  T.a2 = 2.0;
  T.a3 = 1.5;
  T.c2 = 0.5;
  const double t1 = T.theta(0), t2 = T.theta(1), t3 = T.theta(2);
  const double a1 = T.a1, c1 = T.c1, a2 = T.a2, a3 = T.a3, c2 = T.c2;
  // d1 = s + 2, d2 = s^2 + 3 s + 2
  const double al11 = 2.0, al21 = 3.0, al22 = 2.0;

  fl::FlStructure& s = bm.structure;
  s.n = 3;
  s.M = 2;
  s.nm = 3;
  s.Mu = 2;
  s.xi = DiagonalInteractor({Polynomial{al11, 1.0}, Polynomial{al22, al21, 1.0}}, Domain::Continuous);
  s.dim1 = 2;
  s.dim2 = 2;
  s.dim3 = 1;
  s.dimm = 7;
  s.output = [](const VectorXd& x) { return VectorXd((VectorXd(2) << x(0), x(1)).finished()); };
  s.omega1 = [](const VectorXd& x) { return VectorXd((VectorXd(2) << std::sin(x(0)), std::sin(x(1))).finished()); };
  s.w2 = [](const VectorXd& x) {
    MatrixXd W = MatrixXd::Zero(2, 2);
    W(0, 0) = 1.0;
    W(1, 1) = 2.0 + std::cos(x(0));
    return W;
  };
  s.omega3 = [](const VectorXd& x) { return VectorXd::Constant(1, x(2)); };
  s.omega_m = [](const VectorXd& xm, const VectorXd& um) {
    VectorXd w(7);
    w << xm(0), std::tanh(xm(1)), xm(1), xm(2), std::sin(xm(0)), um(0), um(1);
    return w;
  };

  bm.world.follower.n = 3;
  bm.world.follower.inputs = 2;
  bm.world.follower.dynamics = [t1, t2, t3](const VectorXd& x, const VectorXd& u) {
    VectorXd dx(3);
    dx << t1 * std::sin(x(0)) + u(0), t2 * x(2), t3 * std::sin(x(1)) + (2.0 + std::cos(x(0))) * u(1);
    return dx;
  };
  bm.world.follower.output = s.output;
  bm.world.leader.n = 3;
  bm.world.leader.inputs = 2;
  bm.world.leader.dynamics = [a1, c1, a2, a3, c2](const VectorXd& xm, const VectorXd& um) {
    VectorXd dx(3);
    dx << -a1 * xm(0) + c1 * std::tanh(xm(1)) + um(0), xm(2), -a2 * xm(1) - a3 * xm(2) + c2 * std::sin(xm(0)) + um(1);
    return dx;
  };
  bm.world.leader.output = [](const VectorXd& xm) { return VectorXd((VectorXd(2) << xm(0), xm(1)).finished()); };
  bm.world.input = ReferenceInput({{{0.8, 0.5, 0.0}, {0.4, 1.7, 0.3}}, {{1.0, 0.3, 0.5}, {0.5, 1.1, 0.0}}},
                                  VectorXd::Zero(2));

  T.params.Theta1 = MatrixXd::Zero(2, 2);
  T.params.Theta1(0, 0) = t1;
  T.params.Theta1(1, 1) = t2 * t3;
  T.params.Theta2 = MatrixXd::Zero(2, 2);
  T.params.Theta2(0, 0) = 1.0;
  T.params.Theta2(1, 1) = t2;
  T.params.Theta3 = MatrixXd::Zero(1, 2);
  T.params.Theta3(0, 1) = al21 * t2;
  T.params.ThetaM = MatrixXd::Zero(7, 2);
  T.params.ThetaM(0, 0) = al11 - a1;
  T.params.ThetaM(1, 0) = c1;
  T.params.ThetaM(5, 0) = 1.0;
  T.params.ThetaM(2, 1) = al22 - a2;
  T.params.ThetaM(3, 1) = al21 - a3;
  T.params.ThetaM(4, 1) = c2;
  T.params.ThetaM(6, 1) = 1.0;
  T.Theta_star = T.params.stacked();

  T.b = [t1, t2, t3](const VectorXd& x) {
    return VectorXd((VectorXd(2) << t1 * std::sin(x(0)), t2 * t3 * std::sin(x(1))).finished());
  };
  T.A = [t2](const VectorXd& x) {
    MatrixXd A = MatrixXd::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = t2 * (2.0 + std::cos(x(0)));
    return A;
  };
  // y1' + 2 y1 and y2'' + 3 y2' + 2 y2 with y2' = t2 x3, y2'' = t2 x3'.
  T.xi_y = [=](const VectorXd& x, const VectorXd& u) {
    VectorXd r(2);
    r(0) = t1 * std::sin(x(0)) + u(0) + al11 * x(0);
    r(1) = t2 * (t3 * std::sin(x(1)) + (2.0 + std::cos(x(0))) * u(1)) + al21 * t2 * x(2) + al22 * x(1);
    return r;
  };
  T.xi_ym = [=](const VectorXd& xm, const VectorXd& um) {
    VectorXd r(2);
    r(0) = -a1 * xm(0) + c1 * std::tanh(xm(1)) + um(0) + al11 * xm(0);
    r(1) = -a2 * xm(1) - a3 * xm(2) + c2 * std::sin(xm(0)) + um(1) + al21 * xm(2) + al22 * xm(1);
    return r;
  };
  bm.Gamma.assign(2, 2.0 * MatrixXd::Identity(s.omega_size(), s.omega_size()));
  return bm;
}

}  // namespace mrac::oracle
