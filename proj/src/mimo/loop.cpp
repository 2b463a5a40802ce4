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

#include "mrac/mimo/loop.hpp"

#include <cmath>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"

namespace mrac::mimo {

MimoController::MimoController(MimoDesign design, Gains gains, bool adaptive)
    : design_(std::move(design)), gains_(std::move(gains)), adaptive_(adaptive) {
  design_.validate();
  dim_ = regressor_size(design_);
  M_ = design_.M;
  const TimeDomain dom = design_.domain;
  const bool rd1 = design_.law == MimoLaw::Rd1Lyapunov;
  if (rd1) {
    if (gains_.Q.size() == 0) gains_.Q = Eigen::MatrixXd::Identity(M_, M_);
    const Rd1State st = Rd1State::make(design_.xi, gains_.Q, gains_.Sp, Eigen::MatrixXd::Zero(dim_, M_));
    P_ = st.P;
    PS_ = st.P * st.S;
  } else {
    if (gains_.Gamma.size() == 0) gains_.Gamma = Eigen::MatrixXd::Identity(M_, M_);
    check_gains(gains_.Gamma, gains_.Sp, M_, dom);
  }

  const Polynomial one = Polynomial::constant(1.0);
  bank_u_ = FilterBank(uses_state(design_.structure) ? one : design_.lambda, M_, dom);
  bank_y_ = FilterBank(uses_state(design_.structure) ? one : design_.lambda, M_, dom);
  bank_um_ = FilterBank(uses_xm(design_.structure) ? one : design_.lambda_e, design_.Mu, dom);
  bank_ym_ = FilterBank(uses_xm(design_.structure) ? one : design_.lambda_e, M_, dom);
  if (!rd1) {
    zeta_ = RationalFilter(one, design_.f, dim_, dom);
    hu_ = RationalFilter(one, design_.f, M_, dom);
    ebar_ = design_.xi.over(design_.f, dom);
  }
  o_u_ = 0;
  o_y_ = o_u_ + bank_u_.state_size();
  o_um_ = o_y_ + bank_y_.state_size();
  o_ym_ = o_um_ + bank_um_.state_size();
  o_zeta_ = o_ym_ + bank_ym_.state_size();
  o_hu_ = o_zeta_ + zeta_.state_size();
  o_theta_ = o_hu_ + hu_.state_size();
  o_psi_ = o_theta_ + dim_ * M_;
  o_ebar_ = o_psi_ + (rd1 ? 0 : M_ * M_);
  size_ = o_ebar_ + ebar_.state_size();
}

Eigen::VectorXd MimoController::initial_state(const Eigen::MatrixXd& Theta0, const Eigen::MatrixXd& Psi0) const {
  if (Theta0.rows() != dim_ || Theta0.cols() != M_)
    throw Error(ErrorCode::DimensionMismatch,
                "Theta0 must be " + std::to_string(dim_) + " x " + std::to_string(M_), "theta0");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(size_);
  c.segment(o_theta_, dim_ * M_) = Eigen::Map<const Eigen::VectorXd>(Theta0.data(), dim_ * M_);
  if (design_.law == MimoLaw::GradientBasic) {
    if (Psi0.rows() != M_ || Psi0.cols() != M_) throw Error(ErrorCode::DimensionMismatch, "Psi0 must be M x M", "psi0");
    c.segment(o_psi_, M_ * M_) = Eigen::Map<const Eigen::VectorXd>(Psi0.data(), M_ * M_);
  }
  return c;
}

void MimoController::evaluate(const Measurement& meas, ConstVecRef c, LoopSignals& s) const {
  const Structure st = design_.structure;
  const Eigen::Index n = design_.n, nm = design_.nm, M = M_;
  s.omega.resize(dim_);
  Eigen::Index k = 0;
  if (uses_state(st)) {
    s.omega.segment(k, n) = meas.x;
    k += n;
  } else {
    const Eigen::Index w = bank_u_.output_size();
    bank_u_.output(c.segment(o_u_, bank_u_.state_size()), s.omega.segment(k, w));
    k += w;
    bank_y_.output(c.segment(o_y_, bank_y_.state_size()), s.omega.segment(k, w));
    k += w;
    s.omega.segment(k, M) = meas.y;
    k += M;
  }
  if (uses_xm(st)) {
    s.omega.segment(k, nm) = meas.xm;
    k += nm;
  } else {
    const Eigen::Index wu = bank_um_.output_size(), wy = bank_ym_.output_size();
    bank_um_.output(c.segment(o_um_, bank_um_.state_size()), s.omega.segment(k, wu));
    k += wu;
    bank_ym_.output(c.segment(o_ym_, bank_ym_.state_size()), s.omega.segment(k, wy));
    k += wy;
    s.omega.segment(k, M) = meas.ym;
    k += M;
  }
  s.omega.segment(k, design_.Mu) = meas.um;

  const Eigen::Map<const Eigen::MatrixXd> Theta(c.data() + o_theta_, dim_, M);
  s.u.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) s.u(i) = seq_dot(Theta.col(i), s.omega);
  s.theta = Theta;

  if (design_.law == MimoLaw::Rd1Lyapunov) {
    s.zeta = s.omega;
    s.xi = Eigen::VectorXd::Zero(M);
    s.eps = s.e;
    s.m2 = Eigen::VectorXd::Ones(1);
    s.m = Eigen::VectorXd::Ones(1);
    s.psi.resize(0, 0);
    return;
  }

  const Eigen::Map<const Eigen::MatrixXd> Psi(c.data() + o_psi_, M, M);
  s.zeta.resize(dim_, 1);
  zeta_.output(c.segment(o_zeta_, zeta_.state_size()), s.omega, s.zeta.col(0));
  Eigen::VectorXd hu(M), ebar(M);
  hu_.output(c.segment(o_hu_, hu_.state_size()), s.u, hu);
  ebar_.output(c.segment(o_ebar_, ebar_.state_size()), s.e, ebar);

  s.xi.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) s.xi(i) = seq_dot(Theta.col(i), s.zeta.col(0)) - hu(i);
  s.eps.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    double acc = ebar(i);
    for (Eigen::Index j = 0; j < M; ++j) acc += Psi(i, j) * s.xi(j);
    s.eps(i) = acc;
  }
  const double m2 = 1.0 + seq_dot(s.zeta.col(0), s.zeta.col(0)) + seq_dot(s.xi, s.xi);
  s.m2 = Eigen::VectorXd::Constant(1, m2);
  s.m = Eigen::VectorXd::Constant(1, std::sqrt(m2));
  s.psi = Psi;
}

void MimoController::advance(const Measurement& meas, ConstVecRef c, const LoopSignals& s, VecRef out) const {
  const Eigen::Index M = M_;
  bank_u_.advance(c.segment(o_u_, bank_u_.state_size()), s.u, out.segment(o_u_, bank_u_.state_size()));
  bank_y_.advance(c.segment(o_y_, bank_y_.state_size()), meas.y, out.segment(o_y_, bank_y_.state_size()));
  bank_um_.advance(c.segment(o_um_, bank_um_.state_size()), meas.um, out.segment(o_um_, bank_um_.state_size()));
  bank_ym_.advance(c.segment(o_ym_, bank_ym_.state_size()), meas.ym, out.segment(o_ym_, bank_ym_.state_size()));
  const bool dt = design_.domain.is_discrete();
  const Eigen::Map<const Eigen::MatrixXd> Theta(c.data() + o_theta_, dim_, M);
  Eigen::Map<Eigen::MatrixXd> Theta_out(out.data() + o_theta_, dim_, M);

  if (design_.law == MimoLaw::Rd1Lyapunov) {
    if (!adaptive_) {
      Theta_out.setZero();
      return;
    }
    const Eigen::RowVectorXd g = s.e.transpose() * PS_;
    for (Eigen::Index i = 0; i < M; ++i)
      for (Eigen::Index r = 0; r < dim_; ++r) Theta_out(r, i) = -(s.omega(r) * g(i));
    return;
  }

  zeta_.advance(c.segment(o_zeta_, zeta_.state_size()), s.omega, out.segment(o_zeta_, zeta_.state_size()));
  hu_.advance(c.segment(o_hu_, hu_.state_size()), s.u, out.segment(o_hu_, hu_.state_size()));
  ebar_.advance(c.segment(o_ebar_, ebar_.state_size()), s.e, out.segment(o_ebar_, ebar_.state_size()));
  const Eigen::Map<const Eigen::MatrixXd> Psi(c.data() + o_psi_, M, M);
  Eigen::Map<Eigen::MatrixXd> Psi_out(out.data() + o_psi_, M, M);
  if (adaptive_) {
    mimo_update(s.zeta.col(0), s.xi, s.eps, s.m2(0), gains_.Gamma, gains_.Sp, Theta, Psi, dt, Theta_out, Psi_out);
  } else if (dt) {
    Theta_out = Theta;
    Psi_out = Psi;
  } else {
    Theta_out.setZero();
    Psi_out.setZero();
  }
}

SimTrace mimo_run(const MimoRunConfig& cfg) {
  MimoDesign design = cfg.design;
  design.domain = cfg.world.plant.domain;
  design.n = cfg.world.plant.states();
  design.nm = cfg.world.reference.states();
  design.M = cfg.world.plant.outputs();
  design.Mu = cfg.world.reference.inputs();
  auto ctrl = std::make_shared<MimoController>(design, cfg.gains, cfg.adaptive);
  LinearLoop loop(cfg.world, ctrl);
  const Eigen::MatrixXd Theta0 =
      cfg.Theta0.size() ? cfg.Theta0 : Eigen::MatrixXd::Zero(ctrl->regressor_dim(), design.M);
  const Eigen::MatrixXd Psi0 = cfg.Psi0.size() ? cfg.Psi0 : Eigen::MatrixXd::Identity(design.M, design.M);
  const Eigen::VectorXd x0 = cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(design.n);
  const Eigen::VectorXd xm0 = cfg.xm0.size() ? cfg.xm0 : Eigen::VectorXd::Zero(design.nm);
  SimOptions opts;
  opts.steps = cfg.steps;
  opts.lyapunov = cfg.lyapunov;
  opts.observer = cfg.observer;
  return simulate(loop, loop.pack(x0, xm0, ctrl->initial_state(Theta0, Psi0)), opts);
}

}  // namespace mrac::mimo
