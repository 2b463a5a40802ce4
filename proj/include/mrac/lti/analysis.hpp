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

#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/state_space.hpp"

namespace mrac {

/// Absolute tolerance 1e-9 scaled by max(1, ||M||).
double rank_tolerance(const Eigen::MatrixXd& M);
Eigen::Index numerical_rank(const Eigen::MatrixXd& M);

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C);

/// {C A^{i-1} B}, i = 1..count.
std::vector<Eigen::MatrixXd> markov_params(const StateSpace& sys, int count);

/**
 * @brief Smallest i >= 1 with C_row A^{i-1} B != 0 in any input column.
 *
 * Throws NoRelativeDegree when the first n Markov parameters of the row vanish.
 */
int relative_degree(const StateSpace& sys, Eigen::Index output_row = 0);

/// Monic characteristic polynomial det(D I - A) (Faddeev-LeVerrier).
Polynomial charpoly(const Eigen::MatrixXd& A);

struct SisoTransfer {
  double kp = 0.0;       ///< leading numerator coefficient (high-frequency gain)
  Polynomial zeros;      ///< monic numerator Z(D)
  Polynomial poles;      ///< monic denominator P(D)
  int relative_degree = 0;
};

/// c adj(D I - A) b / det(D I - A) for a single-input single-output system.
SisoTransfer siso_transfer(const StateSpace& sys);

bool is_stable_matrix(const Eigen::MatrixXd& A, Domain domain);

/**
 * @brief Gain k with charpoly(A + b k^T) = target (Ackermann).
 *
 * Throws UncontrollablePair on a rank-deficient controllability matrix.
 */
Eigen::VectorXd pole_place(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Polynomial& target);

/// Solves P A0 + A0^T P = -Q. Throws NotHurwitz when A0 is not Hurwitz.
Eigen::MatrixXd lyapunov_solve_ct(const Eigen::MatrixXd& A0, const Eigen::MatrixXd& Q);

}  // namespace mrac
