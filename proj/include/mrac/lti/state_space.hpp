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

#include "mrac/lti/time_domain.hpp"

namespace mrac {

/**
 * @brief Linear time-invariant system D[x] = A x + B u, y = C x + Dd u.
 *
 * Dd defaults to zero; plants and reference models are strictly proper.
 */
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd Dd;
  TimeDomain domain;

  StateSpace() = default;
  StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, TimeDomain dom);
  StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d, TimeDomain dom);

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index inputs() const { return B.cols(); }
  Eigen::Index outputs() const { return C.rows(); }

  /// Throws DimensionMismatch when A, B, C, Dd are inconsistent.
  void validate() const;

  /// Coordinates z = T x: (T A T^-1, T B, C T^-1, Dd).
  StateSpace transformed(const Eigen::MatrixXd& T) const;

  Eigen::VectorXd output(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
  /// DT: next state. CT: state derivative.
  Eigen::VectorXd advance(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
};

}  // namespace mrac
