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

#include "mrac/lti/state_space.hpp"

#include "mrac/error.hpp"

namespace mrac {

StateSpace::StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, TimeDomain dom)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), domain(dom) {
  Dd = Eigen::MatrixXd::Zero(C.rows(), B.cols());
  validate();
}

StateSpace::StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d,
                       TimeDomain dom)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), Dd(std::move(d)), domain(dom) {
  validate();
}

void StateSpace::validate() const {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw Error(ErrorCode::DimensionMismatch, "A must be square", "A");
  if (B.rows() != n) throw Error(ErrorCode::DimensionMismatch, "B must have as many rows as A", "B");
  if (C.cols() != n) throw Error(ErrorCode::DimensionMismatch, "C must have as many columns as A", "C");
  if (Dd.rows() != C.rows() || Dd.cols() != B.cols())
    throw Error(ErrorCode::DimensionMismatch, "feedthrough must be outputs x inputs", "D");
  if (!(domain.step > 0.0)) throw Error(ErrorCode::ValidationError, "step must be positive", "step");
}

StateSpace StateSpace::transformed(const Eigen::MatrixXd& T) const {
  const Eigen::MatrixXd Ti = T.inverse();
  return StateSpace(T * A * Ti, T * B, C * Ti, Dd, domain);
}

Eigen::VectorXd StateSpace::output(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return C * x + Dd * u;
}

Eigen::VectorXd StateSpace::advance(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return A * x + B * u;
}

}  // namespace mrac
