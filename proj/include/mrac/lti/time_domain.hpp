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

namespace mrac {

enum class Domain { Discrete, Continuous };

/**
 * @brief Interpretation of the operator D: a unit shift (DT) or d/dt (CT).
 *
 * DT signals advance by exact recursion. CT signals are integrated with
 * fixed-step RK4 using `step`.
 */
struct TimeDomain {
  Domain tag = Domain::Discrete;
  double step = 1.0;

  static TimeDomain discrete(double step = 1.0) { return {Domain::Discrete, step}; }
  static TimeDomain continuous(double step = 1e-3) { return {Domain::Continuous, step}; }

  bool is_discrete() const { return tag == Domain::Discrete; }
  bool is_continuous() const { return tag == Domain::Continuous; }
};

inline bool operator==(const TimeDomain& a, const TimeDomain& b) {
  return a.tag == b.tag && a.step == b.step;
}

}  // namespace mrac
