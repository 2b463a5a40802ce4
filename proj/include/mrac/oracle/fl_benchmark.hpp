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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrac/fl/controller.hpp"
#include "mrac/fl/loop.hpp"

namespace mrac::oracle {

/**
 * @brief Hidden parameters and closed-form maps of the feedback-linearization benchmark.
 *
 * Follower (theta = (t1, t2, t3)):
 *   x1' = t1 sin x1 + u1
 *   x2' = t2 x3
 *   x3' = t3 sin x2 + (2 + cos x1) u2,   y = (x1, x2), relative degrees (1, 2).
 *
 * With d1 = s + 2 and d2 = s^2 + 3s + 2:
 *   b(x) = (t1 sin x1, t2 t3 sin x2),  A(x) = diag(1, t2 (2 + cos x1)),
 *   omega1 = (sin x1, sin x2), W2(x) = diag(1, 2 + cos x1), omega3 = (x3).
 *
 * Leader (a1, c1, a2, a3, c2):
 *   xm1' = -a1 xm1 + c1 tanh xm2 + um1
 *   xm2' = xm3
 *   xm3' = -a2 xm2 - a3 xm3 + c2 sin xm1 + um2,   ym = (xm1, xm2),
 *   omegaM = (xm1, tanh xm2, xm2, xm3, sin xm1, um1, um2).
 */
struct FlTruth {
  Eigen::Vector3d theta;
  double a1 = 0, c1 = 0, a2 = 0, a3 = 0, c2 = 0;
  fl::FlParams params;        ///< Theta1*, Theta2*, Theta3*, ThetaM*
  Eigen::MatrixXd Theta_star; ///< stacked, rows follow omega = [omega1; omega2; omega3; -omegaM]
  fl::VectorMap b;
  fl::MatrixMap A;
  /// xi_m(s)[y] evaluated from the state and input (closed-form Lie derivatives).
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u)> xi_y;
  /// xi_m(s)[y_m] evaluated from the leader state and input.
  fl::LeaderMap xi_ym;
};

struct FlBenchmark {
  std::string id;
  std::string description;
  fl::FlWorld world;
  fl::FlStructure structure;
  FlTruth truth;
  std::vector<Eigen::MatrixXd> Gamma;  ///< recommended per-column gains
};

FlBenchmark fl_benchmark();

}  // namespace mrac::oracle
