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

namespace mrac {

struct Sinusoid {
  double amplitude = 1.0;
  double frequency = 1.0;  ///< rad per time unit (rad/sample in DT)
  double phase = 0.0;
};

/**
 * @brief Bounded reference input: per-channel sum of sinusoids plus a constant bias.
 */
class ReferenceInput {
 public:
  ReferenceInput() = default;
  ReferenceInput(std::vector<std::vector<Sinusoid>> channels, Eigen::VectorXd bias);

  /// Fixed multi-sine with `per_channel` distinct frequencies in [lo, hi] per channel.
  static ReferenceInput multisine(Eigen::Index width, int per_channel, double lo, double hi);

  Eigen::Index width() const { return static_cast<Eigen::Index>(channels_.size()); }
  Eigen::VectorXd operator()(double t) const;
  void evaluate(double t, Eigen::Ref<Eigen::VectorXd> out) const;

  const std::vector<std::vector<Sinusoid>>& channels() const { return channels_; }
  const Eigen::VectorXd& bias() const { return bias_; }

 private:
  std::vector<std::vector<Sinusoid>> channels_;
  Eigen::VectorXd bias_;
};

}  // namespace mrac
