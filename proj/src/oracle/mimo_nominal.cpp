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

#include "mrac/oracle/mimo_nominal.hpp"

#include <string>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"

namespace mrac::oracle {

RowGains interactor_row_gains(const StateSpace& plant, const DiagonalInteractor& xi) {
  const Eigen::Index M = plant.outputs();
  if (xi.size() != M || plant.inputs() != M) {
    throw Error(ErrorCode::DimensionMismatch, "interactor size must equal plant inputs and outputs", "xi");
  }
  RowGains g;
  g.K0.resize(plant.states(), M);
  g.Kp.resize(M, M);
  for (Eigen::Index i = 0; i < M; ++i) {
    const int rho = relative_degree(plant, i);
    if (rho != xi.degree(i)) {
      throw Error(ErrorCode::RelativeDegreeViolation,
                  "output " + std::to_string(i + 1) + " has relative degree " + std::to_string(rho) +
                      ", interactor row has degree " + std::to_string(xi.degree(i)),
                  "xi");
    }
    const Eigen::RowVectorXd ci = plant.C.row(i);
    g.K0.col(i) = (ci * xi.row(i)(plant.A)).transpose();
    Eigen::RowVectorXd cA = ci;
    for (int k = 1; k < rho; ++k) cA = cA * plant.A;
    g.Kp.row(i) = cA * plant.B;
  }
  if (numerical_rank(g.Kp) < M) {
    throw Error(ErrorCode::SingularKp, "high-frequency gain matrix is singular", "plant");
  }
  return g;
}

MimoSfNominal mimo_sf_nominal(const StateSpace& plant, const DiagonalInteractor& xi) {
  const RowGains g = interactor_row_gains(plant, xi);
  MimoSfNominal out;
  out.Kp = g.Kp;
  out.K2 = g.Kp.inverse();
  out.K1 = (-out.K2 * g.K0.transpose()).transpose();
  return out;
}

MimoOracle mimo_theta_star(const StateSpace& plant, const StateSpace& ref, const mimo::MimoDesign& design) {
  design.validate();
  if (!uses_state(design.structure)) {
    throw Error(ErrorCode::ValidationError, "nominal parameters are not synthesized for output-feedback structures",
                "structure");
  }
  const MimoSfNominal sf = mimo_sf_nominal(plant, design.xi);
  const Eigen::MatrixXd K2t = sf.K2.transpose();
  MimoOracle out;
  out.Kp = sf.Kp;
  out.Theta.resize(mimo::regressor_size(design), design.M);
  Eigen::Index o = 0;
  auto put = [&](const Eigen::MatrixXd& block) {
    out.Theta.middleRows(o, block.rows()) = block;
    o += block.rows();
  };
  put(sf.K1);
  if (uses_xm(design.structure)) {
    const RmStateParams rm = rm_state_params(ref, design.xi);
    put(rm.A1 * K2t);
    put(rm.A2.transpose() * K2t);
  } else {
    const RmOutputParams op = rm_output_params(ref, design.xi, design.lambda_e);
    put(op.B1.transpose() * K2t);
    put(op.B2.transpose() * K2t);
    put(op.B20.transpose() * K2t);
    put(op.A2.transpose() * K2t);
  }
  if (o != out.Theta.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "Theta* layout does not match the regressor", "structure");
  }
  return out;
}

}  // namespace mrac::oracle
