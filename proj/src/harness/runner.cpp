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

#include "mrac/harness/runner.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "mrac/error.hpp"
#include "mrac/oracle/benchmarks.hpp"
#include "mrac/oracle/fl_benchmark.hpp"
#include "mrac/oracle/lyapunov.hpp"
#include "mrac/oracle/mimo_nominal.hpp"
#include "mrac/oracle/siso_nominal.hpp"

namespace mrac::harness {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, field + ": " + what, field);
}

double default_horizon(const Scenario& sc) {
  switch (sc.module) {
    case Module::Siso: return 5000;
    case Module::Mimo: return sc.domain == Domain::Discrete ? 8000 : 50;
    case Module::Fl: return 100;
  }
  return 0;
}

Eigen::VectorXd initial_state(const Scenario& sc, const Eigen::VectorXd& given, Eigen::Index n, const char* field,
                              bool random_allowed) {
  if (given.size()) {
    if (given.size() != n) invalid(field, "expected " + std::to_string(n) + " entries");
    return given;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (random_allowed && sc.x0_random > 0.0) {
    std::mt19937_64 rng(sc.seed);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x(i) = sc.x0_random * (2.0 * u - 1.0);
    }
  }
  return x;
}

Eigen::MatrixXd square_gain(const Scenario& sc, Eigen::Index dim, const Eigen::MatrixXd& fallback) {
  if (sc.Gamma.size() == 0) return fallback;
  if (sc.Gamma_scalar) return sc.Gamma(0, 0) * Eigen::MatrixXd::Identity(dim, dim);
  if (sc.Gamma.rows() != dim || sc.Gamma.cols() != dim)
    invalid("Gamma", "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  return sc.Gamma;
}

LinearWorld linear_world(const Scenario& sc, const LinearWorld* bench) {
  LinearWorld w;
  if (bench) w = *bench;
  if (sc.plant) w.plant = *sc.plant;
  if (sc.reference) w.reference = *sc.reference;
  if (sc.input) w.input = *sc.input;
  if (!bench) {
    if (!sc.plant) invalid("plant", "required when no benchmark is named");
    if (!sc.reference) invalid("reference", "required when no benchmark is named");
    if (!sc.input) invalid("input", "required when no benchmark is named");
  }
  if (w.plant.domain.tag != sc.domain) invalid("domain", "does not match the benchmark domain");
  if (sc.domain == Domain::Continuous && sc.step > 0.0) {
    w.plant.domain.step = sc.step;
    w.reference.domain.step = sc.step;
  }
  w.validate();
  return w;
}

void prepare_siso(const Scenario& sc, Prepared& p) {
  if (sc.domain != Domain::Discrete) invalid("domain", "the SISO designs are discrete-time; use module mimo for CT");
  std::optional<oracle::SisoBenchmark> bench;
  if (!sc.benchmark.empty()) {
    for (auto b : {oracle::siso_scalar_benchmark(), oracle::siso_dt2_benchmark(), oracle::siso_dt3_benchmark()})
      if (b.id == sc.benchmark) bench = b;
    if (!bench) invalid("benchmark", "'" + sc.benchmark + "' is not a SISO benchmark");
  }
  siso::SisoRunConfig c;
  c.world = linear_world(sc, bench ? &bench->world : nullptr);
  siso::SisoDesign& d = c.design;
  if (bench) d = bench->design;
  d.structure = sc.structure;
  d.n = c.world.plant.states();
  d.nm = c.world.reference.states();
  if (sc.pm) d.pm = *sc.pm;
  else if (!bench) invalid("pm", "required");
  if (sc.lambda) d.lambda = *sc.lambda;
  else if (!bench) d.lambda = Polynomial::power_of_linear(0.3, static_cast<int>(d.n - 1));
  if (sc.lambda_e) d.lambda_e = *sc.lambda_e;
  else if (!bench) d.lambda_e = Polynomial::power_of_linear(0.3, static_cast<int>(d.nm - 1));
  if (sc.sign_kp != 0) d.sign_kp = sc.sign_kp;
  else if (!bench) d.sign_kp = 1;
  if (sc.kp_bound > 0.0) d.kp_bound = sc.kp_bound;
  else if (!bench) invalid("kp_bound", "required");
  if (c.world.plant.inputs() != 1 || c.world.plant.outputs() != 1) invalid("plant", "must be single-input single-output");
  d.validate();

  const Eigen::Index dim = siso::regressor_size(d);
  c.Gamma = square_gain(sc, dim, Eigen::MatrixXd::Identity(dim, dim) / d.kp_bound);
  c.gamma = sc.gamma;
  siso::check_gains(c.Gamma, c.gamma, d.kp_bound);
  c.steps = sc.steps();
  c.x0 = initial_state(sc, sc.x0, d.n, "initial.x0", true);
  c.xm0 = initial_state(sc, sc.xm0, d.nm, "initial.xm0", false);

  std::optional<oracle::SisoOracle> truth;
  if (sc.test_mode) {
    truth = oracle::siso_theta_star(c.world.plant, c.world.reference, d);
    c.lyapunov = oracle::siso_lyapunov(truth->theta, truth->rho, c.Gamma, c.gamma);
    p.oracle_attached = true;
  }
  if (sc.theta0.size()) {
    if (sc.theta0.size() != dim) invalid("initial.theta0", "expected " + std::to_string(dim) + " entries");
    c.theta0 = Eigen::Map<const Eigen::VectorXd>(sc.theta0.data(), dim);
  } else if (sc.theta_scale) {
    if (!truth) invalid("initial.theta_scale", "needs test_mode (scales the nominal parameters)");
    c.theta0 = *sc.theta_scale * truth->theta;
  }
  if (sc.rho0) c.rho0 = *sc.rho0;
  if (sc.mode == Mode::Nominal) {
    c.adaptive = false;
    if (!sc.theta0.size()) {
      if (!truth) invalid("mode", "nominal mode needs test_mode or an explicit initial.theta0");
      c.theta0 = truth->theta;
      c.rho0 = truth->rho;
    }
  }
  p.siso = std::move(c);
}

void prepare_mimo(const Scenario& sc, Prepared& p) {
  std::optional<oracle::MimoBenchmark> bench;
  if (!sc.benchmark.empty()) {
    for (auto b : {oracle::mimo_dt_benchmark(), oracle::mimo_ct_benchmark(), oracle::mimo_rd1_benchmark()})
      if (b.id == sc.benchmark) bench = b;
    if (!bench) invalid("benchmark", "'" + sc.benchmark + "' is not a MIMO benchmark");
  }
  mimo::MimoRunConfig c;
  c.world = linear_world(sc, bench ? &bench->world : nullptr);
  mimo::MimoDesign& d = c.design;
  if (bench) {
    d = bench->design;
    c.gains = bench->gains;
  }
  const TimeDomain dom = c.world.plant.domain;
  d.domain = dom;
  d.structure = sc.structure;
  d.n = c.world.plant.states();
  d.nm = c.world.reference.states();
  d.M = c.world.plant.outputs();
  d.Mu = c.world.reference.inputs();
  if (d.M != c.world.plant.inputs()) invalid("plant", "must be square");
  if (!sc.law.empty()) d.law = sc.law == "rd1" ? mimo::MimoLaw::Rd1Lyapunov : mimo::MimoLaw::GradientBasic;
  else if (!bench) d.law = mimo::MimoLaw::GradientBasic;
  if (!sc.interactor.empty()) d.xi = DiagonalInteractor(sc.interactor, dom.tag);
  else if (!bench) invalid("interactor", "required");
  const bool dt = dom.is_discrete();
  if (sc.f) d.f = *sc.f;
  else if (!bench) d.f = Polynomial::power_of_linear(dt ? 0.2 : -1.0, d.xi.max_degree());
  const double root = dt ? 0.3 : -2.0;
  if (sc.lambda) d.lambda = *sc.lambda;
  else if (!bench) d.lambda = Polynomial::power_of_linear(root, static_cast<int>(std::max<Eigen::Index>(d.n - d.M - 1, 0)));
  if (sc.lambda_e) d.lambda_e = *sc.lambda_e;
  else if (!bench) d.lambda_e = Polynomial::power_of_linear(root, static_cast<int>(d.nm - d.M));
  d.validate();

  const bool rd1 = d.law == mimo::MimoLaw::Rd1Lyapunov;
  if (sc.Sp.size()) c.gains.Sp = sc.Sp;
  if (c.gains.Sp.rows() != d.M || c.gains.Sp.cols() != d.M)
    invalid("Sp", "required as an " + std::to_string(d.M) + "x" + std::to_string(d.M) + " matrix");
  if (rd1) {
    if (sc.Q.size()) c.gains.Q = sc.Q;
    if (c.gains.Q.size() == 0) c.gains.Q = Eigen::MatrixXd::Identity(d.M, d.M);
  } else {
    c.gains.Gamma = square_gain(sc, d.M, c.gains.Gamma.size() ? c.gains.Gamma : Eigen::MatrixXd::Identity(d.M, d.M));
    mimo::check_gains(c.gains.Gamma, c.gains.Sp, d.M, dom);
  }
  c.steps = sc.steps();
  c.x0 = initial_state(sc, sc.x0, d.n, "initial.x0", true);
  c.xm0 = initial_state(sc, sc.xm0, d.nm, "initial.xm0", false);

  const Eigen::Index dim = mimo::regressor_size(d);
  std::optional<oracle::MimoOracle> truth;
  if (sc.test_mode && uses_state(d.structure)) {
    truth = oracle::mimo_theta_star(c.world.plant, c.world.reference, d);
    if (rd1) {
      const Eigen::MatrixXd P = mimo::Rd1State::make(d.xi, c.gains.Q, c.gains.Sp, truth->Theta).P;
      c.lyapunov = oracle::rd1_lyapunov(truth->Theta, truth->Kp, c.gains.Sp, P);
    } else {
      c.lyapunov = oracle::mimo_gradient_lyapunov(truth->Theta, truth->Kp, c.gains.Sp, c.gains.Gamma);
    }
    p.oracle_attached = true;
  }
  if (sc.theta0.size()) {
    if (sc.theta0.rows() != dim || sc.theta0.cols() != d.M)
      invalid("initial.theta0", "expected a " + std::to_string(dim) + "x" + std::to_string(d.M) + " matrix");
    c.Theta0 = sc.theta0;
  } else if (sc.theta_scale) {
    if (!truth) invalid("initial.theta_scale", "needs test_mode and a state-feedback structure");
    c.Theta0 = *sc.theta_scale * truth->Theta;
  }
  if (sc.psi0.size()) {
    if (sc.psi0.rows() != d.M || sc.psi0.cols() != d.M) invalid("initial.psi0", "expected an MxM matrix");
    c.Psi0 = sc.psi0;
  }
  if (sc.mode == Mode::Nominal) {
    c.adaptive = false;
    if (!sc.theta0.size()) {
      if (!truth) invalid("mode", "nominal mode needs test_mode with a state-feedback structure, or initial.theta0");
      c.Theta0 = truth->Theta;
      c.Psi0 = truth->Kp;
    }
  }
  p.mimo = std::move(c);
}

void prepare_fl(const Scenario& sc, Prepared& p) {
  if (sc.domain != Domain::Continuous) invalid("domain", "the feedback-linearization design is continuous-time");
  const oracle::FlBenchmark bench = oracle::fl_benchmark();
  if (!sc.benchmark.empty() && sc.benchmark != bench.id) invalid("benchmark", "'" + sc.benchmark + "' is not an fl benchmark");
  if (sc.plant || sc.reference) invalid("plant", "the fl module runs the built-in benchmark only");
  fl::FlRunConfig c;
  c.world = bench.world;
  if (sc.input) {
    if (sc.input->width() != bench.structure.Mu) invalid("input", "expected 2 channels");
    c.world.input = *sc.input;
  }
  c.structure = bench.structure;
  const Eigen::Index dim = c.structure.omega_size();
  const Eigen::Index M = c.structure.M;
  if (sc.Gamma.size() == 0) {
    c.Gamma = bench.Gamma;
  } else {
    const Eigen::MatrixXd G = square_gain(sc, dim, Eigen::MatrixXd());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (!G.isApprox(G.transpose()) || !(es.eigenvalues().minCoeff() > 0.0))
      invalid("Gamma", "must be symmetric positive definite");
    c.Gamma.assign(static_cast<std::size_t>(M), G);
  }
  if (!(sc.guard > 0.0)) invalid("guard", "must be positive");
  c.guard = sc.guard;
  c.step = sc.effective_step();
  c.steps = sc.steps();
  c.x0 = initial_state(sc, sc.x0, c.structure.n, "initial.x0", true);
  c.xm0 = initial_state(sc, sc.xm0, c.structure.nm, "initial.xm0", false);

  const bool truth = sc.test_mode;
  if (truth) {
    c.lyapunov = oracle::fl_lyapunov(bench.truth.Theta_star, c.Gamma);
    p.oracle_attached = true;
  }
  if (sc.theta0.size()) {
    if (sc.theta0.rows() != dim || sc.theta0.cols() != M)
      invalid("initial.theta0", "expected a " + std::to_string(dim) + "x" + std::to_string(M) + " matrix");
    c.Theta0 = sc.theta0;
  } else if (sc.theta_scale) {
    if (!truth) invalid("initial.theta_scale", "needs test_mode (scales the true parameters)");
    c.Theta0 = *sc.theta_scale * bench.truth.Theta_star;
  } else {
    // Blind default: the input-gain block starts at identity so A_hat = W2(x) is invertible.
    c.Theta0 = Eigen::MatrixXd::Zero(dim, M);
    if (c.structure.dim2 == M) c.Theta0.middleRows(c.structure.dim1, M).setIdentity();
  }
  if (sc.mode == Mode::Nominal) {
    c.adaptive = false;
    if (!sc.theta0.size()) {
      if (!truth) invalid("mode", "nominal mode needs test_mode or an explicit initial.theta0");
      c.Theta0 = bench.truth.Theta_star;
    }
  }
  p.fl = std::move(c);
}

}  // namespace

Prepared prepare(const Scenario& input) {
  Prepared p;
  p.scenario = input;
  Scenario& sc = p.scenario;
  if (sc.name.empty()) invalid("name", "must not be empty");
  if (sc.horizon == 0.0) sc.horizon = default_horizon(sc);
  if (!(sc.horizon > 0.0)) invalid("horizon", "must be positive");
  if (sc.step < 0.0) invalid("step", "must be positive");
  if (sc.step > 0.0 && sc.domain == Domain::Discrete && sc.step != 1.0)
    invalid("step", "discrete-time runs advance one sample per step");
  if (sc.tolerance < 0.0) invalid("tolerance", "must be positive");
  if (sc.tail_fraction < 0.0 || sc.tail_fraction > 1.0) invalid("tail_fraction", "must lie in (0, 1]");
  if (sc.x0_random < 0.0) invalid("initial.x0_random", "must be non-negative");
  try {
    switch (sc.module) {
      case Module::Siso: prepare_siso(sc, p); break;
      case Module::Mimo: prepare_mimo(sc, p); break;
      case Module::Fl: prepare_fl(sc, p); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
    const std::string field = e.field().empty() ? std::string("scenario") : e.field();
    throw Error(ErrorCode::ValidationError, field + ": " + e.what(), field);
  }
  p.metrics.tail_fraction = sc.effective_tail_fraction();
  p.metrics.tolerance = sc.effective_tolerance();
  if (p.oracle_attached)
    p.metrics.rule = sc.domain == Domain::Discrete ? LyapunovRule::Increment : LyapunovRule::Derivative;
  return p;
}

void validate_scenario(const Scenario& sc) { (void)prepare(sc); }

RunResult run_prepared(const Prepared& p) {
  RunResult r;
  if (p.siso) r.trace = siso::siso_run(*p.siso);
  else if (p.mimo) r.trace = mimo::mimo_run(*p.mimo);
  else r.trace = fl::fl_run(*p.fl);
  r.report = compute_metrics(r.trace, p.metrics);
  r.report.name = p.scenario.name;
  r.report.module = to_string(p.scenario.module);
  r.report.mode = to_string(p.scenario.mode);
  r.report.test_mode = p.scenario.test_mode;
  return r;
}

RunResult run_experiment(const Scenario& sc) { return run_prepared(prepare(sc)); }

}  // namespace mrac::harness
