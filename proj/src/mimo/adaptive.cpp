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

#include "mrac/mimo/adaptive.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac::mimo {

namespace {

void check_poly(const Polynomial& p, int degree, Domain dom, const char* field) {
  if (!p.is_monic()) throw Error(ErrorCode::ValidationError, std::string(field) + " must be monic", field);
  if (degree >= 0 && p.degree() != degree)
    throw Error(ErrorCode::ValidationError,
                std::string(field) + " must have degree " + std::to_string(degree) + ", got " +
                    std::to_string(p.degree()),
                field);
  if (!p.is_stable(dom))
    throw Error(ErrorCode::ValidationError, std::string(field) + " = " + p.to_string() + " is not stable", field);
}

}  // namespace

void MimoDesign::validate() const {
  if (M < 1 || n < M) throw Error(ErrorCode::ValidationError, "need 1 <= M <= n", "plant");
  if (Mu < 1) throw Error(ErrorCode::ValidationError, "reference model needs at least one input", "reference");
  if (xi.size() != M) throw Error(ErrorCode::DimensionMismatch, "interactor must have M rows", "interactor");
  check_poly(f, -1, domain.tag, "f");
  if (f.degree() < xi.max_degree())
    throw Error(ErrorCode::ValidationError, "deg f must be at least the largest interactor degree", "f");
  if (!uses_state(structure)) check_poly(lambda, -1, domain.tag, "lambda");
  if (!uses_xm(structure)) {
    if (nm < M) throw Error(ErrorCode::ValidationError, "reference order must be at least M", "reference");
    check_poly(lambda_e, static_cast<int>(nm - M), domain.tag, "lambda_e");
  }
  if (law == MimoLaw::Rd1Lyapunov) {
    if (!domain.is_continuous())
      throw Error(ErrorCode::DomainMismatch, "the relative-degree-one law is continuous-time only", "design");
    for (Eigen::Index i = 0; i < M; ++i)
      if (xi.degree(i) != 1)
        throw Error(ErrorCode::ValidationError, "the relative-degree-one law needs interactor rows s + p_i",
                    "interactor");
  }
}

Eigen::Index MimoDesign::of_blocks() const { return uses_state(structure) ? 0 : lambda.degree(); }
Eigen::Index MimoDesign::ym_blocks() const { return uses_xm(structure) ? 0 : lambda_e.degree(); }

Eigen::Index regressor_size(const MimoDesign& d) {
  Eigen::Index size = uses_state(d.structure) ? d.n : 2 * d.of_blocks() * d.M + d.M;
  size += uses_xm(d.structure) ? d.nm : d.ym_blocks() * (d.Mu + d.M) + d.M;
  return size + d.Mu;
}

Eigen::VectorXd mimo_regressor(const MimoDesign& d, const MimoRegressorSignals& sig) {
  auto need = [](const Eigen::VectorXd& v, Eigen::Index size, const char* name) {
    if (v.size() != size)
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(name) + " has size " + std::to_string(v.size()) + ", expected " + std::to_string(size),
                  name);
  };
  Eigen::VectorXd w(regressor_size(d));
  Eigen::Index k = 0;
  auto put = [&](const Eigen::VectorXd& v) {
    w.segment(k, v.size()) = v;
    k += v.size();
  };
  if (uses_state(d.structure)) {
    need(sig.x, d.n, "x");
    put(sig.x);
  } else {
    need(sig.w1, d.of_blocks() * d.M, "w1");
    need(sig.w2, d.of_blocks() * d.M, "w2");
    need(sig.y, d.M, "y");
    put(sig.w1);
    put(sig.w2);
    put(sig.y);
  }
  if (uses_xm(d.structure)) {
    need(sig.xm, d.nm, "xm");
    put(sig.xm);
  } else {
    need(sig.wum, d.ym_blocks() * d.Mu, "wum");
    need(sig.wym, d.ym_blocks() * d.M, "wym");
    need(sig.ym, d.M, "ym");
    put(sig.wum);
    put(sig.wym);
    put(sig.ym);
  }
  need(sig.um, d.Mu, "um");
  put(sig.um);
  return w;
}

void check_gains(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& Sp, Eigen::Index M, TimeDomain domain) {
  if (Gamma.rows() != M || Gamma.cols() != M)
    throw Error(ErrorCode::DimensionMismatch, "Gamma must be M x M", "Gamma");
  if (Sp.rows() != M || Sp.cols() != M) throw Error(ErrorCode::DimensionMismatch, "Sp must be M x M", "Sp");
  if (!Gamma.isApprox(Gamma.transpose(), 1e-12))
    throw Error(ErrorCode::GainBoundViolation, "Gamma must be symmetric", "Gamma");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gamma, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw Error(ErrorCode::GainBoundViolation, "Gamma must be positive definite", "Gamma");
  if (domain.is_discrete() && !(es.eigenvalues().maxCoeff() < 2.0))
    throw Error(ErrorCode::GainBoundViolation, "discrete-time Gamma must satisfy Gamma < 2I", "Gamma");
}

MimoGradientState MimoGradientState::make(Eigen::MatrixXd Theta, Eigen::MatrixXd Psi, Eigen::MatrixXd Gamma,
                                          Eigen::MatrixXd Sp, TimeDomain domain) {
  const Eigen::Index M = Theta.cols();
  check_gains(Gamma, Sp, M, domain);
  if (Psi.rows() != M || Psi.cols() != M) throw Error(ErrorCode::DimensionMismatch, "Psi must be M x M", "Psi");
  return {std::move(Theta), std::move(Psi), std::move(Gamma), std::move(Sp)};
}

MimoFrame frame_from(const MimoGradientState& st, const Eigen::VectorXd& omega, const Eigen::VectorXd& zeta,
                     const Eigen::VectorXd& hu, const Eigen::VectorXd& ebar) {
  const Eigen::Index M = st.Theta.cols();
  MimoFrame f;
  f.omega = omega;
  f.zeta = zeta;
  f.ebar = ebar;
  f.xi.resize(M);
  f.epsilon.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) f.xi(i) = seq_dot(st.Theta.col(i), zeta) - hu(i);
  for (Eigen::Index i = 0; i < M; ++i) {
    double acc = ebar(i);
    for (Eigen::Index j = 0; j < M; ++j) acc += st.Psi(i, j) * f.xi(j);
    f.epsilon(i) = acc;
  }
  f.m2 = 1.0 + seq_dot(zeta, zeta) + seq_dot(f.xi, f.xi);
  f.m = std::sqrt(f.m2);
  return f;
}

MimoEstimator::MimoEstimator(const DiagonalInteractor& xi, const Polynomial& f, Eigen::Index dim, TimeDomain domain)
    : ebar_(xi.over(f, domain)),
      zeta_(Polynomial::constant(1.0), f, dim, domain),
      hu_(Polynomial::constant(1.0), f, xi.size(), domain) {}

MimoFrame MimoEstimator::estimation_frame(const MimoGradientState& st, const Eigen::VectorXd& omega,
                                          const Eigen::VectorXd& e) {
  if (omega.size() != zeta_.width() || st.Theta.rows() != omega.size() || e.size() != ebar_.width())
    throw Error(ErrorCode::DimensionMismatch, "omega, Theta and e must match the estimator dimensions", "omega");
  Eigen::VectorXd u(st.Theta.cols());
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = seq_dot(st.Theta.col(i), omega);
  const Eigen::VectorXd ebar = ebar_.step(e);
  const Eigen::VectorXd zeta = zeta_.step(omega);
  const Eigen::VectorXd hu = hu_.step(u);
  return frame_from(st, omega, zeta, hu, ebar);
}

void mimo_update(ConstVecRef zeta, ConstVecRef xi, ConstVecRef eps, double m2, const Eigen::MatrixXd& Gamma,
                 const Eigen::MatrixXd& Sp, const Eigen::Ref<const Eigen::MatrixXd>& Theta,
                 const Eigen::Ref<const Eigen::MatrixXd>& Psi, bool increment, Eigen::Ref<Eigen::MatrixXd> Theta_out,
                 Eigen::Ref<Eigen::MatrixXd> Psi_out) {
  const Eigen::Index M = eps.size();
  const Eigen::VectorXd c = eps / m2;
  const Eigen::VectorXd spc = Sp * c;
  Eigen::MatrixXd cx(M, M);
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index j = 0; j < M; ++j) cx(i, j) = c(i) * xi(j);
  const Eigen::MatrixXd gcx = Gamma * cx;
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index r = 0; r < zeta.size(); ++r)
      Theta_out(r, i) = increment ? Theta(r, i) - zeta(r) * spc(i) : -(zeta(r) * spc(i));
  for (Eigen::Index j = 0; j < M; ++j)
    for (Eigen::Index i = 0; i < M; ++i) Psi_out(i, j) = increment ? Psi(i, j) - gcx(i, j) : -gcx(i, j);
}

MimoGradientState mimo_gradient_step(const MimoGradientState& st, const MimoFrame& f, TimeDomain domain) {
  MimoGradientState out = st;
  if (domain.is_discrete()) {
    mimo_update(f.zeta, f.xi, f.epsilon, f.m2, st.Gamma, st.Sp, st.Theta, st.Psi, true, out.Theta, out.Psi);
  } else {
    Eigen::MatrixXd dT(st.Theta.rows(), st.Theta.cols()), dP(st.Psi.rows(), st.Psi.cols());
    mimo_update(f.zeta, f.xi, f.epsilon, f.m2, st.Gamma, st.Sp, st.Theta, st.Psi, false, dT, dP);
    out.Theta += domain.step * dT;
    out.Psi += domain.step * dP;
  }
  return out;
}

Rd1State Rd1State::make(const DiagonalInteractor& xi, Eigen::MatrixXd Q, Eigen::MatrixXd S, Eigen::MatrixXd Theta) {
  const Eigen::Index M = xi.size();
  Rd1State st;
  st.p0.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    if (xi.degree(i) != 1)
      throw Error(ErrorCode::ValidationError, "the relative-degree-one law needs interactor rows s + p_i", "interactor");
    st.p0(i) = xi.row(i).coeff(0);
  }
  if (Q.rows() != M || Q.cols() != M) throw Error(ErrorCode::DimensionMismatch, "Q must be M x M", "Q");
  if (S.rows() != M || S.cols() != M) throw Error(ErrorCode::DimensionMismatch, "S must be M x M", "Sp");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Q + Q.transpose()), Eigen::EigenvaluesOnly);
  if (!Q.isApprox(Q.transpose(), 1e-12) || !(es.eigenvalues().minCoeff() > 0.0))
    throw Error(ErrorCode::ValidationError, "Q must be symmetric positive definite", "Q");
  const Eigen::MatrixXd A0 = -Eigen::MatrixXd(st.p0.asDiagonal());
  st.P = lyapunov_solve_ct(A0, Q);
  st.Q = std::move(Q);
  st.S = std::move(S);
  st.Theta = std::move(Theta);
  return st;
}

Eigen::MatrixXd rd1_rate(const Rd1State& st, const Eigen::VectorXd& e, const Eigen::VectorXd& omega) {
  const Eigen::RowVectorXd g = e.transpose() * st.P * st.S;
  return -omega * g;
}

Rd1State rd1_step(const Rd1State& st, const Eigen::VectorXd& e, const Eigen::VectorXd& omega, TimeDomain domain) {
  if (!domain.is_continuous())
    throw Error(ErrorCode::DomainMismatch, "the relative-degree-one law is continuous-time only", "domain");
  Rd1State out = st;
  out.Theta += domain.step * rd1_rate(st, e, omega);
  return out;
}

}  // namespace mrac::mimo
