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

#include "mrac/lti/rational_filter.hpp"

#include "mrac/error.hpp"

namespace mrac {

RationalFilter::RationalFilter(const Polynomial& num, const Polynomial& den, Eigen::Index width,
                               TimeDomain domain)
    : domain_(domain), width_(width) {
  build(std::vector<Polynomial>(static_cast<std::size_t>(width), num), den);
}

RationalFilter::RationalFilter(const std::vector<Polynomial>& nums, const Polynomial& den, TimeDomain domain)
    : domain_(domain), width_(static_cast<Eigen::Index>(nums.size())) {
  build(nums, den);
}

void RationalFilter::build(const std::vector<Polynomial>& nums, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::ValidationError, "filter denominator is zero", "den");
  if (!den.is_stable(domain_.tag))
    throw Error(ErrorCode::ValidationError, "filter denominator " + den.to_string() + " is not stable", "den");
  const Polynomial d = den.monic();
  order_ = d.degree();
  den_ = d.coeffs().head(order_);
  out_ = Eigen::MatrixXd::Zero(width_, order_);
  feed_ = Eigen::VectorXd::Zero(width_);
  for (Eigen::Index c = 0; c < width_; ++c) {
    const Polynomial n = nums[static_cast<std::size_t>(c)] * (1.0 / den.leading());
    if (!n.is_zero() && n.degree() > order_)
      throw Error(ErrorCode::ValidationError, "filter numerator degree exceeds denominator degree", "num");
    const double nk = n.coeff(static_cast<int>(order_));
    feed_(c) = nk;
    for (Eigen::Index j = 0; j < order_; ++j) out_(c, j) = n.coeff(static_cast<int>(j)) - nk * den_(j);
  }
  state_ = Eigen::VectorXd::Zero(state_size());
}

void RationalFilter::output(ConstVecRef s, ConstVecRef u, VecRef y) const {
  for (Eigen::Index c = 0; c < width_; ++c) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < order_; ++j) acc += out_(c, j) * s(c * order_ + j);
    y(c) = acc + feed_(c) * u(c);
  }
}

void RationalFilter::advance(ConstVecRef s, ConstVecRef u, VecRef out) const {
  for (Eigen::Index c = 0; c < width_; ++c) {
    const Eigen::Index base = c * order_;
    double last = u(c);
    for (Eigen::Index j = 0; j < order_; ++j) last -= den_(j) * s(base + j);
    for (Eigen::Index j = 0; j + 1 < order_; ++j) out(base + j) = s(base + j + 1);
    if (order_ > 0) out(base + order_ - 1) = last;
  }
}

Eigen::VectorXd RationalFilter::step(const Eigen::VectorXd& u) {
  if (u.size() != width_) throw Error(ErrorCode::DimensionMismatch, "filter input width mismatch", "input");
  Eigen::VectorXd y(width_);
  output(state_, u, y);
  const Eigen::Index ns = state_size();
  if (domain_.is_discrete()) {
    Eigen::VectorXd next(ns);
    advance(state_, u, next);
    state_ = next;
  } else {
    const double h = domain_.step;
    Eigen::VectorXd k1(ns), k2(ns), k3(ns), k4(ns);
    advance(state_, u, k1);
    advance(state_ + 0.5 * h * k1, u, k2);
    advance(state_ + 0.5 * h * k2, u, k3);
    advance(state_ + h * k3, u, k4);
    state_ += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

void RationalFilter::set_state(const Eigen::VectorXd& s) {
  if (s.size() != state_size()) throw Error(ErrorCode::DimensionMismatch, "filter state size mismatch", "state");
  state_ = s;
}

FilterBank::FilterBank(const Polynomial& lambda, Eigen::Index width, TimeDomain domain)
    : base_(Polynomial::constant(1.0), lambda, width, domain) {}

void FilterBank::output(ConstVecRef s, VecRef y) const {
  const Eigen::Index k = base_.order();
  const Eigen::Index w = base_.width();
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index c = 0; c < w; ++c) y(j * w + c) = s(c * k + j);
}

Eigen::VectorXd FilterBank::step(const Eigen::VectorXd& u) {
  Eigen::VectorXd y(output_size());
  output(base_.state(), y);
  base_.step(u);
  return y;
}

}  // namespace mrac
