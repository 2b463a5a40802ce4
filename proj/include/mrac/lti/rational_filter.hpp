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
#include "mrac/lti/time_domain.hpp"

namespace mrac {

using ConstVecRef = Eigen::Ref<const Eigen::VectorXd>;
using VecRef = Eigen::Ref<Eigen::VectorXd>;

/**
 * @brief Proper stable filter N_c(D)/d(D) applied channel-wise to a vector signal.
 *
 * Each channel has its own numerator and a shared denominator, realized in
 * controllable canonical form. The state is channel-major: channel c owns
 * entries [c*order, (c+1)*order).
 *
 * The pure `output`/`advance` pair is what closed-loop simulators use on
 * slices of a packed state. `step` is the stateful convenience form.
 */
class RationalFilter {
 public:
  RationalFilter() = default;
  RationalFilter(const Polynomial& num, const Polynomial& den, Eigen::Index width, TimeDomain domain);
  RationalFilter(const std::vector<Polynomial>& nums, const Polynomial& den, TimeDomain domain);

  Eigen::Index width() const { return width_; }
  Eigen::Index order() const { return order_; }
  Eigen::Index state_size() const { return order_ * width_; }
  const TimeDomain& domain() const { return domain_; }
  bool strictly_proper() const { return (feed_.array() == 0.0).all(); }

  /// y = C s + D u.
  void output(ConstVecRef s, ConstVecRef u, VecRef y) const;
  /// A s + B u: the next state (DT) or the state derivative (CT).
  void advance(ConstVecRef s, ConstVecRef u, VecRef out) const;

  /// Returns the output at the current time, then moves the state one step.
  /// CT holds the input constant across the RK4 step.
  Eigen::VectorXd step(const Eigen::VectorXd& u);

  const Eigen::VectorXd& state() const { return state_; }
  void set_state(const Eigen::VectorXd& s);
  void reset() { state_.setZero(); }

 private:
  void build(const std::vector<Polynomial>& nums, const Polynomial& den);

  TimeDomain domain_;
  Eigen::Index width_ = 0;
  Eigen::Index order_ = 0;
  Eigen::VectorXd den_;   // monic denominator, low coefficients a_0..a_{k-1}
  Eigen::MatrixXd out_;   // width x order output rows
  Eigen::VectorXd feed_;  // per-channel feedthrough
  Eigen::VectorXd state_;
};

/**
 * @brief [1, D, ..., D^{k-1}] / Lambda(D) applied to a vector input, k = deg Lambda.
 *
 * The outputs coincide with the realization state of 1/Lambda, so the bank is
 * strictly proper. Output layout is power-major: block j holds D^j/Lambda of
 * every channel.
 */
class FilterBank {
 public:
  FilterBank() = default;
  FilterBank(const Polynomial& lambda, Eigen::Index width, TimeDomain domain);

  Eigen::Index width() const { return base_.width(); }
  Eigen::Index blocks() const { return base_.order(); }
  Eigen::Index output_size() const { return base_.order() * base_.width(); }
  Eigen::Index state_size() const { return base_.state_size(); }

  void output(ConstVecRef s, VecRef y) const;
  void advance(ConstVecRef s, ConstVecRef u, VecRef out) const { base_.advance(s, u, out); }
  Eigen::VectorXd step(const Eigen::VectorXd& u);
  const Eigen::VectorXd& state() const { return base_.state(); }

 private:
  RationalFilter base_;
};

}  // namespace mrac
