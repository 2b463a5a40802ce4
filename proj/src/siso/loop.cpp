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

#include "mrac/siso/loop.hpp"

#include <cmath>

#include "mrac/error.hpp"

namespace mrac::siso {

SisoController::SisoController(SisoDesign design, Eigen::MatrixXd Gamma, double gamma, bool adaptive)
    : design_(std::move(design)), Gamma_(std::move(Gamma)), gamma_(gamma), adaptive_(adaptive) {
  design_.validate();
  dim_ = regressor_size(design_);
  if (Gamma_.size() == 0) Gamma_ = Eigen::MatrixXd::Identity(dim_, dim_) / design_.kp_bound;
  if (Gamma_.rows() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                "Gamma must be " + std::to_string(dim_) + " x " + std::to_string(dim_) + " for this structure", "Gamma");
  check_gains(Gamma_, gamma_, design_.kp_bound);

  const TimeDomain dt = TimeDomain::discrete();
  const Polynomial one = Polynomial::constant(1.0);
  const Polynomial none = one;  // degree-0 Lambda gives empty banks
  bank_u_ = FilterBank(uses_state(design_.structure) ? none : design_.lambda, 1, dt);
  bank_y_ = FilterBank(uses_state(design_.structure) ? none : design_.lambda, 1, dt);
  bank_um_ = FilterBank(uses_xm(design_.structure) ? none : design_.lambda_e, 1, dt);
  bank_ym_ = FilterBank(uses_xm(design_.structure) ? none : design_.lambda_e, 1, dt);
  wm_zeta_ = RationalFilter(one, design_.pm, dim_, dt);
  wm_u_ = RationalFilter(one, design_.pm, 1, dt);

  o_u_ = 0;
  o_y_ = o_u_ + bank_u_.state_size();
  o_um_ = o_y_ + bank_y_.state_size();
  o_ym_ = o_um_ + bank_um_.state_size();
  o_zeta_ = o_ym_ + bank_ym_.state_size();
  o_wu_ = o_zeta_ + wm_zeta_.state_size();
  o_theta_ = o_wu_ + wm_u_.state_size();
  o_rho_ = o_theta_ + dim_;
  size_ = o_rho_ + 1;
}

Eigen::VectorXd SisoController::initial_state(const Eigen::VectorXd& theta0, double rho0) const {
  if (theta0.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "theta0 must have " + std::to_string(dim_) + " entries", "theta0");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(size_);
  c.segment(o_theta_, dim_) = theta0;
  c(o_rho_) = rho0;
  return c;
}

void SisoController::evaluate(const Measurement& meas, ConstVecRef c, LoopSignals& s) const {
  const Structure st = design_.structure;
  const Eigen::Index n = design_.n, nm = design_.nm;
  s.omega.resize(dim_);
  Eigen::Index k = 0;
  if (uses_state(st)) {
    s.omega.segment(k, n) = meas.x;
    k += n;
  } else {
    bank_u_.output(c.segment(o_u_, bank_u_.state_size()), s.omega.segment(k, n - 1));
    k += n - 1;
    bank_y_.output(c.segment(o_y_, bank_y_.state_size()), s.omega.segment(k, n - 1));
    k += n - 1;
    s.omega(k++) = meas.y(0);
  }
  if (uses_xm(st)) {
    s.omega.segment(k, nm) = meas.xm;
    k += nm;
  } else {
    bank_um_.output(c.segment(o_um_, bank_um_.state_size()), s.omega.segment(k, nm - 1));
    k += nm - 1;
    bank_ym_.output(c.segment(o_ym_, bank_ym_.state_size()), s.omega.segment(k, nm - 1));
    k += nm - 1;
    s.omega(k++) = meas.ym(0);
  }
  s.omega(k++) = meas.um(0);

  const auto theta = c.segment(o_theta_, dim_);
  const double rho = c(o_rho_);
  s.u.resize(1);
  s.u(0) = seq_dot(theta, s.omega);

  s.zeta.resize(dim_, 1);
  wm_zeta_.output(c.segment(o_zeta_, wm_zeta_.state_size()), s.omega, s.zeta.col(0));
  Eigen::VectorXd wu(1);
  wm_u_.output(c.segment(o_wu_, wm_u_.state_size()), s.u, wu);

  const double xi = seq_dot(theta, s.zeta.col(0)) - wu(0);
  const double eps = s.e(0) + rho * xi;
  const double m2 = 1.0 + seq_dot(s.zeta.col(0), s.zeta.col(0)) + xi * xi;
  s.xi = Eigen::VectorXd::Constant(1, xi);
  s.eps = Eigen::VectorXd::Constant(1, eps);
  s.m2 = Eigen::VectorXd::Constant(1, m2);
  s.m = Eigen::VectorXd::Constant(1, std::sqrt(m2));
  s.theta = theta;
  s.psi = Eigen::MatrixXd::Constant(1, 1, rho);
}

void SisoController::advance(const Measurement& meas, ConstVecRef c, const LoopSignals& s, VecRef out) const {
  bank_u_.advance(c.segment(o_u_, bank_u_.state_size()), s.u, out.segment(o_u_, bank_u_.state_size()));
  bank_y_.advance(c.segment(o_y_, bank_y_.state_size()), meas.y, out.segment(o_y_, bank_y_.state_size()));
  bank_um_.advance(c.segment(o_um_, bank_um_.state_size()), meas.um, out.segment(o_um_, bank_um_.state_size()));
  bank_ym_.advance(c.segment(o_ym_, bank_ym_.state_size()), meas.ym, out.segment(o_ym_, bank_ym_.state_size()));
  wm_zeta_.advance(c.segment(o_zeta_, wm_zeta_.state_size()), s.omega, out.segment(o_zeta_, wm_zeta_.state_size()));
  wm_u_.advance(c.segment(o_wu_, wm_u_.state_size()), s.u, out.segment(o_wu_, wm_u_.state_size()));
  const auto theta = c.segment(o_theta_, dim_);
  const double rho = c(o_rho_);
  if (adaptive_) {
    double rho_next = rho;
    siso_update(theta, rho, Gamma_, gamma_, design_.sign_kp, s.zeta.col(0), s.xi(0), s.eps(0), s.m2(0),
                out.segment(o_theta_, dim_), rho_next);
    out(o_rho_) = rho_next;
  } else {
    out.segment(o_theta_, dim_) = theta;
    out(o_rho_) = rho;
  }
}

SimTrace siso_run(const SisoRunConfig& cfg) {
  if (!cfg.world.plant.domain.is_discrete())
    throw Error(ErrorCode::DomainMismatch, "the SISO designs are discrete-time; use the MIMO module for CT", "domain");
  if (cfg.world.plant.inputs() != 1 || cfg.world.plant.outputs() != 1)
    throw Error(ErrorCode::DimensionMismatch, "SISO run needs a single-input single-output plant", "plant");
  SisoDesign design = cfg.design;
  design.n = cfg.world.plant.states();
  design.nm = cfg.world.reference.states();
  auto ctrl = std::make_shared<SisoController>(design, cfg.Gamma, cfg.gamma, cfg.adaptive);
  LinearLoop loop(cfg.world, ctrl);
  const Eigen::VectorXd theta0 = cfg.theta0.size() ? cfg.theta0 : Eigen::VectorXd::Zero(ctrl->regressor_dim());
  const double rho0 = cfg.rho0 != 0.0 ? cfg.rho0 : static_cast<double>(design.sign_kp);
  const Eigen::VectorXd x0 = cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(design.n);
  const Eigen::VectorXd xm0 = cfg.xm0.size() ? cfg.xm0 : Eigen::VectorXd::Zero(design.nm);
  SimOptions opts;
  opts.steps = cfg.steps;
  opts.lyapunov = cfg.lyapunov;
  opts.observer = cfg.observer;
  return simulate(loop, loop.pack(x0, xm0, ctrl->initial_state(theta0, rho0)), opts);
}

}  // namespace mrac::siso
