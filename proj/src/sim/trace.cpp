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

#include "mrac/sim/trace.hpp"

#include <cmath>

namespace mrac {

std::vector<std::string> SimTrace::column_names() const {
  std::vector<std::string> cols{"t"};
  for (const char* base : {"y_", "ym_", "e_", "u_"}) {
    const Eigen::Index width = std::string(base) == "u_" ? inputs : outputs;
    for (Eigen::Index i = 1; i <= width; ++i) cols.push_back(base + std::to_string(i));
  }
  cols.push_back("m");
  for (Eigen::Index i = 1; i <= outputs; ++i) cols.push_back("eps_" + std::to_string(i));
  cols.push_back("V");
  cols.push_back("theta_norm");
  return cols;
}

bool SimTrace::has_lyapunov() const { return !rows.empty() && !std::isnan(rows.front().V); }

}  // namespace mrac
