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
#include "mrac/lti/reference_params.hpp"
#include "mrac/lti/state_space.hpp"
#include "mrac/mimo/adaptive.hpp"

namespace mrac::oracle {

/// xi_m(D)[y] = K0^T x + K_p u.
struct RowGains {
  Eigen::MatrixXd K0;  ///< n x M; row i of K0^T is c_i d_i(A)
  Eigen::MatrixXd Kp;  ///< M x M; row i is c_i A^{rho_i - 1} B
};

/// Throws RelativeDegreeViolation when row degrees differ from the interactor, SingularKp when K_p is singular.
RowGains interactor_row_gains(const StateSpace& plant, const DiagonalInteractor& xi);

struct MimoSfNominal {
  Eigen::MatrixXd K1;  ///< n x M, K1^T = -K_p^{-1} K0^T
  Eigen::MatrixXd K2;  ///< K_p^{-1}
  Eigen::MatrixXd Kp;
};

MimoSfNominal mimo_sf_nominal(const StateSpace& plant, const DiagonalInteractor& xi);

inline RmStateParams mimo_rm_params(const StateSpace& ref, const DiagonalInteractor& xi) {
  return rm_state_params(ref, xi);
}

/// Theta* (regressor rows x M) and Psi* = K_p. Output-feedback structures are not synthesized.
struct MimoOracle {
  Eigen::MatrixXd Theta;
  Eigen::MatrixXd Kp;
};

MimoOracle mimo_theta_star(const StateSpace& plant, const StateSpace& ref, const mimo::MimoDesign& design);

}  // namespace mrac::oracle
