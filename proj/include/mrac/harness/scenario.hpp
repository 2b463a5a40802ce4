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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/signal.hpp"
#include "mrac/lti/state_space.hpp"
#include "mrac/sim/linear_world.hpp"

namespace mrac::harness {

inline constexpr int kSchemaVersion = 1;

enum class Module { Siso, Mimo, Fl };
enum class Mode { Nominal, Adaptive };

std::string to_string(Module m);
std::string to_string(Mode m);

/**
 * @brief One experiment: system, design, gains, input, horizon and mode.
 *
 * Polynomials are ascending coefficient lists. `horizon` counts samples in DT
 * and time units in CT. Oracle-dependent options (theta_scale, nominal mode
 * without theta0) are only accepted with test_mode on.
 */
struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  Module module = Module::Siso;
  Domain domain = Domain::Discrete;
  std::string benchmark;  ///< empty when the plant is given by matrices

  std::optional<StateSpace> plant, reference;

  // design
  Structure structure = Structure::SF_Xm;
  std::string law;  ///< gradient | rd1 (mimo); empty: benchmark choice or gradient
  std::optional<Polynomial> pm, lambda, lambda_e, f;
  std::vector<Polynomial> interactor;
  int sign_kp = 0;         ///< 0: benchmark value or +1
  double kp_bound = 0.0;   ///< 0: benchmark value (required otherwise)

  // gains
  Eigen::MatrixXd Gamma;  ///< empty: module default
  bool Gamma_scalar = false;  ///< Gamma given as one number g, meaning g I
  double gamma = 1.0;
  Eigen::MatrixXd Sp, Q;
  double guard = 1e-6;

  std::optional<ReferenceInput> input;

  double horizon = 0.0;
  double step = 0.0;  ///< 0: domain default
  std::uint64_t seed = 0;
  Mode mode = Mode::Adaptive;
  bool test_mode = false;

  // initial conditions
  std::optional<double> theta_scale;
  Eigen::MatrixXd theta0;
  std::optional<double> rho0;
  Eigen::MatrixXd psi0;
  Eigen::VectorXd x0, xm0;
  double x0_random = 0.0;  ///< uniform amplitude for a seeded random plant state

  double tolerance = 0.0;      ///< 0: module default
  double tail_fraction = 0.0;  ///< 0: 0.1, or 0.2 for fl

  Eigen::Index steps() const;
  double effective_step() const;
  double effective_tolerance() const;
  double effective_tail_fraction() const;
};

/// Strict parse: unknown fields, wrong types and missing required fields throw ParseError naming the field.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);
/// Semantic checks (stability, dimensions, gain bounds); throws ValidationError naming the field.
void validate_scenario(const Scenario& sc);

std::vector<std::string> benchmark_ids();

}  // namespace mrac::harness
