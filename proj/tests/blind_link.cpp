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

// Controller path built without oracle headers or the oracle library. The
// design data below is what a user would know: orders, P_m, Lambda, the sign
// and a bound of the high-frequency gain. Exit status 0 means the adaptive
// loop ran and tracked.

#include <cmath>
#include <cstdio>

#include "mrac/siso/loop.hpp"

int main() {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const mrac::TimeDomain dt = mrac::TimeDomain::discrete();

  mrac::siso::SisoRunConfig cfg;
  cfg.world.plant = mrac::StateSpace((MatrixXd(2, 2) << 0, 1, -0.55, 1.6).finished(), (MatrixXd(2, 1) << 0, 1).finished(),
                                     (MatrixXd(1, 2) << 0.8, 0).finished(), dt);
  cfg.world.reference = mrac::StateSpace((MatrixXd(2, 2) << 0, 1, -0.25, 0.6).finished(),
                                         (MatrixXd(2, 1) << 0, 1).finished(), (MatrixXd(1, 2) << 0.5, 0).finished(), dt);
  cfg.world.input = mrac::ReferenceInput({{{1.0, 0.3, 0.0}, {0.7, 1.1, 0.4}}}, VectorXd::Zero(1));
  cfg.design.structure = mrac::Structure::OF_Xm;
  cfg.design.n = cfg.design.nm = 2;
  cfg.design.pm = mrac::Polynomial{0.06, -0.5, 1.0};
  cfg.design.lambda = mrac::Polynomial{-0.3, 1.0};
  cfg.design.sign_kp = 1;
  cfg.design.kp_bound = 1.0;
  cfg.steps = 5000;

  const mrac::SimTrace tr = mrac::siso::siso_run(cfg);
  double sq = 0.0;
  const std::size_t tail = tr.rows.size() / 10;
  for (std::size_t k = tr.rows.size() - tail; k < tr.rows.size(); ++k) sq += tr.rows[k].e.squaredNorm();
  const double rms = std::sqrt(sq / static_cast<double>(tail));
  std::printf("blind run: %zu samples, tail RMS %.3g\n", tr.rows.size(), rms);
  return std::isfinite(rms) && rms < 1e-3 && !tr.aborted ? 0 : 1;
}
