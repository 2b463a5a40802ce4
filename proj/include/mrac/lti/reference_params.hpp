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
#include "mrac/lti/state_space.hpp"

namespace mrac {

/// r_m = xi_m(D)[y_m] = A1^T x_m + A2 u_m. SISO: A1 is n x 1 (alpha_1), A2 is 1 x 1.
struct RmStateParams {
  Eigen::MatrixXd A1;
  Eigen::MatrixXd A2;
};

/**
 * @brief Closed-form reference-input parameters from (A_m, B_m, C_m).
 *
 * Row i of A1^T is c_i d_i(A_m); row i of A2 is sum_j p_ij c_i A_m^{j-1} B_m.
 * Throws RelativeDegreeViolation when a reference row has lower relative degree
 * than the interactor row.
 */
RmStateParams rm_state_params(const StateSpace& ref, const DiagonalInteractor& xi);
RmStateParams rm_state_params(const StateSpace& ref, const Polynomial& pm);

/**
 * @brief r_m = B1 w_um + B2 w_ym + B20 y_m + A2 u_m with w = [I, ..., D^{k-1}]/Lambda_e.
 *
 * w_um and w_ym use the FilterBank layout. SISO: B1, B2 are 1 x k rows.
 */
struct RmOutputParams {
  Eigen::MatrixXd B1;
  Eigen::MatrixXd B2;
  Eigen::MatrixXd B20;
  Eigen::MatrixXd A2;
  double fit_residual = 0.0;  ///< max |r_m - fit| over the identification record
};

/**
 * @brief Identifies the output-form parameters by least squares.
 *
 * The reference model is driven from rest by a fixed multi-sine input while
 * Lambda_e filters u_m and y_m; the fit targets A1^T x_m sample by sample and
 * takes the minimum-norm solution when the regressors are collinear.
 * Throws UnobservablePair when (A_m, C_m) is unobservable.
 */
RmOutputParams rm_output_params(const StateSpace& ref, const DiagonalInteractor& xi, const Polynomial& lambda_e);
RmOutputParams rm_output_params(const StateSpace& ref, const Polynomial& pm, const Polynomial& lambda_e);

}  // namespace mrac
