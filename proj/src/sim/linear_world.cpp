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

#include "mrac/sim/linear_world.hpp"

#include "mrac/error.hpp"

namespace mrac {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::SF_Xm: return "SF_Xm";
    case Structure::SF_Ym: return "SF_Ym";
    case Structure::OF_Xm: return "OF_Xm";
    case Structure::OF_Ym: return "OF_Ym";
  }
  return "?";
}

Structure parse_structure(std::string_view name) {
  for (Structure s : {Structure::SF_Xm, Structure::SF_Ym, Structure::OF_Xm, Structure::OF_Ym})
    if (to_string(s) == name) return s;
  throw Error(ErrorCode::ValidationError, "unknown structure '" + std::string(name) + "'", "structure");
}

void LinearWorld::validate() const {
  plant.validate();
  reference.validate();
  if (!(plant.domain == reference.domain))
    throw Error(ErrorCode::DomainMismatch, "plant and reference model must share a time domain", "reference");
  if (plant.outputs() != reference.outputs())
    throw Error(ErrorCode::DimensionMismatch, "plant and reference model need the same number of outputs", "reference");
  if (plant.inputs() != plant.outputs())
    throw Error(ErrorCode::DimensionMismatch, "plant must be square (inputs = outputs)", "plant");
  if (input.width() != reference.inputs())
    throw Error(ErrorCode::DimensionMismatch, "reference input width must match the reference model inputs", "input");
  if (!plant.Dd.isZero(0.0) || !reference.Dd.isZero(0.0))
    throw Error(ErrorCode::ValidationError, "plant and reference model must be strictly proper", "plant");
}

LinearLoop::LinearLoop(LinearWorld world, std::shared_ptr<const LinearController> ctrl)
    : world_(std::move(world)), ctrl_(std::move(ctrl)) {
  world_.validate();
}

Eigen::Index LinearLoop::state_size() const {
  return world_.plant.states() + world_.reference.states() + ctrl_->state_size();
}

Eigen::VectorXd LinearLoop::pack(const Eigen::VectorXd& x0, const Eigen::VectorXd& xm0, const Eigen::VectorXd& c0) const {
  const Eigen::Index n = world_.plant.states(), nm = world_.reference.states();
  if (x0.size() != n || xm0.size() != nm || c0.size() != ctrl_->state_size())
    throw Error(ErrorCode::DimensionMismatch, "initial state blocks have the wrong sizes");
  Eigen::VectorXd X(state_size());
  X << x0, xm0, c0;
  return X;
}

void LinearLoop::evaluate(double t, const Eigen::VectorXd& X, LoopSignals& s) const {
  const Eigen::Index n = world_.plant.states(), nm = world_.reference.states();
  const auto x = X.head(n);
  const auto xm = X.segment(n, nm);
  s.y = world_.plant.C * x;
  s.ym = world_.reference.C * xm;
  s.um.resize(world_.input.width());
  world_.input.evaluate(t, s.um);
  s.e = s.y - s.ym;
  const Measurement meas{x, xm, s.y, s.ym, s.um};
  ctrl_->evaluate(meas, X.tail(ctrl_->state_size()), s);
}

void LinearLoop::advance(double, const Eigen::VectorXd& X, const LoopSignals& s, Eigen::VectorXd& out) const {
  const Eigen::Index n = world_.plant.states(), nm = world_.reference.states(), nc = ctrl_->state_size();
  out.resize(X.size());
  const auto x = X.head(n);
  const auto xm = X.segment(n, nm);
  out.head(n) = world_.plant.A * x + world_.plant.B * s.u;
  out.segment(n, nm) = world_.reference.A * xm + world_.reference.B * s.um;
  const Measurement meas{x, xm, s.y, s.ym, s.um};
  ctrl_->advance(meas, X.tail(nc), s, out.tail(nc));
}

}  // namespace mrac
