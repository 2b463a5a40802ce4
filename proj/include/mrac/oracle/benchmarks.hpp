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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/state_space.hpp"
#include "mrac/mimo/loop.hpp"
#include "mrac/siso/adaptive.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::oracle {

/// Controllable canonical realization of k_p Z(D) / P(D) (P monic).
StateSpace from_transfer(double kp, const Polynomial& Z, const Polynomial& P, TimeDomain domain);

struct SisoBenchmark {
  std::string id;
  std::string description;
  LinearWorld world;
  siso::SisoDesign design;  ///< structure SF_Xm; n, nm filled
};

/// x(t+1) = 0.5 x + u, y = 2x; reference identical; P_m = z + 0.4.
SisoBenchmark siso_scalar_benchmark();
/// Unstable 2nd-order plant, no finite zeros.
SisoBenchmark siso_dt2_benchmark();
/// Unstable minimum-phase 3rd-order plant (relative degree 2) in non-canonical coordinates.
SisoBenchmark siso_dt3_benchmark();

struct MimoBenchmark {
  std::string id;
  std::string description;
  LinearWorld world;
  mimo::MimoDesign design;  ///< n, nm, M, Mu, domain filled
  mimo::MimoController::Gains gains;
};

/// Unstable 4-state 2x2 plant, vector relative degree (1, 2), one stable zero.
MimoBenchmark mimo_dt_benchmark();
MimoBenchmark mimo_ct_benchmark();
/// 3-state 2x2 plant with relative degree (1, 1) for the Lyapunov-based law.
MimoBenchmark mimo_rd1_benchmark();

/// S_p = s K_p^T with s chosen so that lambda_max(K_p S_p) = target.
Eigen::MatrixXd scaled_sp(const Eigen::MatrixXd& Kp, double target);

/// Random SISO matching problem with coprime Z and P and stable design polynomials.
struct RandomSisoProblem {
  double kp = 1.0;
  Polynomial Z, P, pm, lambda;
};

/// Deterministic uniform double in [lo, hi) from a 64-bit engine.
double uniform(std::mt19937_64& rng, double lo, double hi);

RandomSisoProblem random_coprime_problem(std::mt19937_64& rng, int n);

}  // namespace mrac::oracle
