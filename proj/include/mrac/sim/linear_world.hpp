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

#include <memory>
#include <string_view>

#include <Eigen/Dense>

#include "mrac/lti/signal.hpp"
#include "mrac/lti/state_space.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac {

enum class Structure { SF_Xm, SF_Ym, OF_Xm, OF_Ym };

std::string_view to_string(Structure s);
/// Accepts "SF_Xm", "SF_Ym", "OF_Xm", "OF_Ym". Throws ValidationError otherwise.
Structure parse_structure(std::string_view name);
inline bool uses_state(Structure s) { return s == Structure::SF_Xm || s == Structure::SF_Ym; }
inline bool uses_xm(Structure s) { return s == Structure::SF_Xm || s == Structure::OF_Xm; }

/**
 * @brief Plant, reference model and reference input: everything outside the controller.
 */
struct LinearWorld {
  StateSpace plant;
  StateSpace reference;
  ReferenceInput input;
  void validate() const;
};

/// What a linear controller may read at one instant.
struct Measurement {
  ConstVecRef x;   ///< plant state (state-feedback structures only)
  ConstVecRef xm;  ///< reference state (Xm structures only)
  const Eigen::VectorXd& y;
  const Eigen::VectorXd& ym;
  const Eigen::VectorXd& um;
};

/**
 * @brief Controller half of a linear closed loop.
 *
 * `evaluate` sets u, omega and the estimation signals in `s` (y, ym, um and e
 * are already filled). `advance` writes the next controller state (DT) or its
 * derivative (CT).
 */
class LinearController {
 public:
  virtual ~LinearController() = default;
  virtual Eigen::Index state_size() const = 0;
  virtual void evaluate(const Measurement& meas, ConstVecRef c, LoopSignals& s) const = 0;
  virtual void advance(const Measurement& meas, ConstVecRef c, const LoopSignals& s, VecRef out) const = 0;
};

/// Packed state [x, x_m, controller].
class LinearLoop : public ClosedLoop {
 public:
  LinearLoop(LinearWorld world, std::shared_ptr<const LinearController> ctrl);

  TimeDomain domain() const override { return world_.plant.domain; }
  Eigen::Index state_size() const override;
  Eigen::Index outputs() const override { return world_.plant.outputs(); }
  Eigen::Index inputs() const override { return world_.plant.inputs(); }
  void evaluate(double t, const Eigen::VectorXd& X, LoopSignals& s) const override;
  void advance(double t, const Eigen::VectorXd& X, const LoopSignals& s, Eigen::VectorXd& out) const override;

  Eigen::VectorXd pack(const Eigen::VectorXd& x0, const Eigen::VectorXd& xm0, const Eigen::VectorXd& c0) const;
  const LinearWorld& world() const { return world_; }

 private:
  LinearWorld world_;
  std::shared_ptr<const LinearController> ctrl_;
};

}  // namespace mrac
