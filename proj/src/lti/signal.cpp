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

#include "mrac/lti/signal.hpp"

#include <cmath>

#include "mrac/error.hpp"

namespace mrac {

ReferenceInput::ReferenceInput(std::vector<std::vector<Sinusoid>> channels, Eigen::VectorXd bias)
    : channels_(std::move(channels)), bias_(std::move(bias)) {
  if (bias_.size() == 0) bias_ = Eigen::VectorXd::Zero(width());
  if (bias_.size() != width())
    throw Error(ErrorCode::DimensionMismatch, "bias width must match the number of channels", "input.bias");
}

ReferenceInput ReferenceInput::multisine(Eigen::Index width, int per_channel, double lo, double hi) {
  std::vector<std::vector<Sinusoid>> ch(static_cast<std::size_t>(width));
  const double total = static_cast<double>(per_channel * width);
  for (Eigen::Index c = 0; c < width; ++c) {
    for (int i = 0; i < per_channel; ++i) {
      const double slot = static_cast<double>(i * width + c);
      const double w = lo + (hi - lo) * slot / std::max(1.0, total - 1.0);
      ch[static_cast<std::size_t>(c)].push_back({1.0, w, 0.37 * (i + 1) * (c + 1)});
    }
  }
  return ReferenceInput(std::move(ch), Eigen::VectorXd::Zero(width));
}

Eigen::VectorXd ReferenceInput::operator()(double t) const {
  Eigen::VectorXd out(width());
  evaluate(t, out);
  return out;
}

void ReferenceInput::evaluate(double t, Eigen::Ref<Eigen::VectorXd> out) const {
  for (Eigen::Index c = 0; c < width(); ++c) {
    double v = bias_(c);
    for (const auto& s : channels_[static_cast<std::size_t>(c)]) v += s.amplitude * std::sin(s.frequency * t + s.phase);
    out(c) = v;
  }
}

}  // namespace mrac
