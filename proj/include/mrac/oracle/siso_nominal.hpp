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
#include "mrac/lti/state_space.hpp"
#include "mrac/siso/adaptive.hpp"

namespace mrac::oracle {

/// Nominal state-feedback gains: u = k1^T x + k2 (alpha1^T x_m + alpha2 u_m).
struct SisoSfNominal {
  Eigen::VectorXd k1;
  double k2 = 0.0;
  double kp = 0.0;
  Polynomial zeros;  ///< monic Z(z)
  Eigen::VectorXd alpha1;
  double alpha2 = 0.0;
};

/**
 * @brief Places the eigenvalues of A + b k1^T at the roots of Z(z) P_m(z); k2 = 1/k_p.
 *
 * Throws UncontrollablePair, RelativeDegreeViolation, and ValidationError for a
 * non-minimum-phase plant or a P_m whose degree differs from n*.
 */
SisoSfNominal siso_nominal_sf(const StateSpace& plant, const StateSpace& ref, const Polynomial& pm);

/// Output-feedback matching: u = theta1^T w1 + theta2^T w2 + theta20 y + theta3 r_m.
struct SisoOfNominal {
  Eigen::VectorXd theta1, theta2;
  double theta20 = 0.0;
  double theta3 = 0.0;
  double kp = 0.0;
  Polynomial zeros, poles;
  double residual = 0.0;  ///< max |identity| over 2n+2 sample points
};

/**
 * @brief Solves theta1^T a P + (theta2^T a + theta20 Lambda) k_p Z = Lambda (P - Z P_m).
 *
 * Square linear system in the 2n-1 coefficients. Throws SingularMatchingSystem
 * when Z and P share a root.
 */
SisoOfNominal siso_nominal_of(const StateSpace& plant, const Polynomial& pm, const Polynomial& lambda);
SisoOfNominal siso_nominal_of(double kp, const Polynomial& Z, const Polynomial& P, const Polynomial& pm,
                              const Polynomial& lambda);

/// theta* and rho* = k_p for the structure in `design`.
struct SisoOracle {
  Eigen::VectorXd theta;
  double rho = 0.0;
};

SisoOracle siso_theta_star(const StateSpace& plant, const StateSpace& ref, const siso::SisoDesign& design);

}  // namespace mrac::oracle
