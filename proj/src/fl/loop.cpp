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

#include "mrac/fl/loop.hpp"

#include <cmath>

#include "mrac/error.hpp"

namespace mrac::fl {

FlLoop::FlLoop(FlWorld world, FlStructure structure, std::vector<Eigen::MatrixXd> Gamma, double guard, bool adaptive,
               TimeDomain domain)
    : world_(std::move(world)),
      s_(std::move(structure)),
      Gamma_(std::move(Gamma)),
      guard_(guard),
      adaptive_(adaptive),
      domain_(domain) {
  s_.validate();
  if (!domain_.is_continuous())
    throw Error(ErrorCode::DomainMismatch, "the feedback-linearization design is continuous-time", "domain");
  if (world_.follower.n != s_.n || world_.leader.n != s_.nm || world_.input.width() != s_.Mu)
    throw Error(ErrorCode::DimensionMismatch, "world and structure dimensions disagree", "plant");
  dim_ = s_.omega_size();
  if (Gamma_.empty()) Gamma_.assign(static_cast<std::size_t>(s_.M), Eigen::MatrixXd::Identity(dim_, dim_));
  if (static_cast<Eigen::Index>(Gamma_.size()) != s_.M)
    throw Error(ErrorCode::DimensionMismatch, "one adaptation gain per output column", "Gamma");
  for (const auto& G : Gamma_) {
    if (G.rows() != dim_ || G.cols() != dim_)
      throw Error(ErrorCode::DimensionMismatch, "each Gamma_i must be " + std::to_string(dim_) + " square", "Gamma");
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (!G.isApprox(G.transpose(), 1e-12) || llt.info() != Eigen::Success)
      throw Error(ErrorCode::GainBoundViolation, "each Gamma_i must be symmetric positive definite", "Gamma");
  }
  if (!(guard_ > 0.0)) throw Error(ErrorCode::ValidationError, "guard threshold must be positive", "guard");

  Eigen::Index off = s_.n + s_.nm;
  for (Eigen::Index i = 0; i < s_.M; ++i) {
    zeta_.emplace_back(Polynomial::constant(1.0), s_.xi.row(i), dim_, domain_);
    wto_.emplace_back(Polynomial::constant(1.0), s_.xi.row(i), 1, domain_);
    o_zeta_.push_back(off);
    off += zeta_.back().state_size();
    o_wto_.push_back(off);
    off += wto_.back().state_size();
  }
  o_theta_ = off;
  size_ = off + dim_ * s_.M;
}

Eigen::VectorXd FlLoop::pack(const Eigen::VectorXd& x0, const Eigen::VectorXd& xm0, const Eigen::MatrixXd& Theta0) const {
  if (x0.size() != s_.n || xm0.size() != s_.nm || Theta0.rows() != dim_ || Theta0.cols() != s_.M)
    throw Error(ErrorCode::DimensionMismatch, "initial state blocks have the wrong sizes");
  Eigen::VectorXd X = Eigen::VectorXd::Zero(size_);
  X.head(s_.n) = x0;
  X.segment(s_.n, s_.nm) = xm0;
  X.segment(o_theta_, dim_ * s_.M) = Eigen::Map<const Eigen::VectorXd>(Theta0.data(), dim_ * s_.M);
  return X;
}

void FlLoop::evaluate(double t, const Eigen::VectorXd& X, LoopSignals& sig) const {
  const Eigen::Index M = s_.M;
  const Eigen::VectorXd x = X.head(s_.n);
  const Eigen::VectorXd xm = X.segment(s_.n, s_.nm);
  sig.y = s_.output(x);
  sig.ym = world_.leader.output(xm);
  sig.um.resize(s_.Mu);
  world_.input.evaluate(t, sig.um);
  sig.e = sig.y - sig.ym;

  const Eigen::Map<const Eigen::MatrixXd> Theta(X.data() + o_theta_, dim_, M);
  const FlParams p = FlParams::from_stacked(s_, Theta);
  const Eigen::VectorXd v = fl_v_signal(s_, p, x, sig.y, xm, sig.um);
  sig.u = fl_control(s_, p, x, v, guard_);
  sig.omega = fl_omega(s_, x, sig.u, xm, sig.um);
  sig.theta = Theta;

  sig.zeta.resize(dim_, M);
  sig.xi.resize(M);
  sig.eps.resize(M);
  sig.m.resize(M);
  sig.m2.resize(M);
  Eigen::VectorXd w(1), dummy = Eigen::VectorXd::Zero(1);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto k = static_cast<std::size_t>(i);
    zeta_[k].output(X.segment(o_zeta_[k], zeta_[k].state_size()), sig.omega, sig.zeta.col(i));
    wto_[k].output(X.segment(o_wto_[k], wto_[k].state_size()), dummy, w);
    const FlColumnFrame f = column_frame_from(Theta.col(i), sig.zeta.col(i), w(0), sig.e(i));
    sig.xi(i) = f.xi;
    sig.eps(i) = f.epsilon;
    sig.m(i) = f.m;
    sig.m2(i) = f.m2;
  }
  sig.psi.resize(0, 0);
}

void FlLoop::advance(double, const Eigen::VectorXd& X, const LoopSignals& sig, Eigen::VectorXd& out) const {
  const Eigen::Index M = s_.M;
  out.resize(size_);
  const Eigen::VectorXd x = X.head(s_.n);
  const Eigen::VectorXd xm = X.segment(s_.n, s_.nm);
  out.head(s_.n) = world_.follower.dynamics(x, sig.u);
  out.segment(s_.n, s_.nm) = world_.leader.dynamics(xm, sig.um);
  const Eigen::Map<const Eigen::MatrixXd> Theta(X.data() + o_theta_, dim_, M);
  Eigen::Map<Eigen::MatrixXd> Theta_out(out.data() + o_theta_, dim_, M);
  Eigen::VectorXd to(1);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto k = static_cast<std::size_t>(i);
    zeta_[k].advance(X.segment(o_zeta_[k], zeta_[k].state_size()), sig.omega,
                     out.segment(o_zeta_[k], zeta_[k].state_size()));
    to(0) = seq_dot(Theta.col(i), sig.omega);
    wto_[k].advance(X.segment(o_wto_[k], wto_[k].state_size()), to, out.segment(o_wto_[k], wto_[k].state_size()));
    if (adaptive_)
      Theta_out.col(i) = Gamma_[k] * sig.zeta.col(i) * (sig.eps(i) / sig.m2(i));
    else
      Theta_out.col(i).setZero();
  }
}

SimTrace fl_run(const FlRunConfig& cfg) {
  FlLoop loop(cfg.world, cfg.structure, cfg.Gamma, cfg.guard, cfg.adaptive, TimeDomain::continuous(cfg.step));
  const FlStructure& s = cfg.structure;
  const Eigen::MatrixXd Theta0 = cfg.Theta0.size() ? cfg.Theta0 : Eigen::MatrixXd::Zero(s.omega_size(), s.M);
  const Eigen::VectorXd x0 = cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(s.n);
  const Eigen::VectorXd xm0 = cfg.xm0.size() ? cfg.xm0 : Eigen::VectorXd::Zero(s.nm);
  SimOptions opts;
  opts.steps = cfg.steps;
  opts.lyapunov = cfg.lyapunov;
  opts.observer = cfg.observer;
  return simulate(loop, loop.pack(x0, xm0, Theta0), opts);
}

}  // namespace mrac::fl
