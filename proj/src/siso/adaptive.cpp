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

#include "mrac/siso/adaptive.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mrac/error.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac::siso {

namespace {

void check_poly(const Polynomial& p, int degree, const char* field) {
  if (!p.is_monic()) throw Error(ErrorCode::ValidationError, std::string(field) + " must be monic", field);
  if (p.degree() != degree)
    throw Error(ErrorCode::ValidationError,
                std::string(field) + " must have degree " + std::to_string(degree) + ", got " +
                    std::to_string(p.degree()),
                field);
  if (!p.is_stable(Domain::Discrete))
    throw Error(ErrorCode::ValidationError,
                std::string(field) + " = " + p.to_string('z') + " has a root on or outside the unit circle", field);
}

}  // namespace

void SisoDesign::validate() const {
  if (n < 1) throw Error(ErrorCode::ValidationError, "plant order must be >= 1", "plant");
  if (nm < 1) throw Error(ErrorCode::ValidationError, "reference order must be >= 1", "reference");
  if (pm.degree() < 1) throw Error(ErrorCode::ValidationError, "pm must have degree >= 1", "pm");
  check_poly(pm, pm.degree(), "pm");
  if (!uses_state(structure)) check_poly(lambda, static_cast<int>(n - 1), "lambda");
  if (!uses_xm(structure)) check_poly(lambda_e, static_cast<int>(nm - 1), "lambda_e");
  if (sign_kp != 1 && sign_kp != -1) throw Error(ErrorCode::ValidationError, "sign_kp must be +1 or -1", "sign_kp");
  if (!(kp_bound > 0.0)) throw Error(ErrorCode::ValidationError, "kp_bound must be positive", "kp_bound");
}

Eigen::Index regressor_size(const SisoDesign& d) {
  switch (d.structure) {
    case Structure::SF_Xm: return d.n + d.nm + 1;
    case Structure::SF_Ym: return d.n + 2 * (d.nm - 1) + 2;
    case Structure::OF_Xm: return 2 * (d.n - 1) + 1 + d.nm + 1;
    case Structure::OF_Ym: return 2 * (d.n - 1) + 1 + 2 * (d.nm - 1) + 2;
  }
  return 0;
}

Eigen::VectorXd build_regressor(const SisoDesign& d, const RegressorSignals& sig) {
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
  auto put1 = [&](double v) { w(k++) = v; };
  if (uses_state(d.structure)) {
    need(sig.x, d.n, "x");
    put(sig.x);
  } else {
    need(sig.w1, d.n - 1, "w1");
    need(sig.w2, d.n - 1, "w2");
    put(sig.w1);
    put(sig.w2);
    put1(sig.y);
  }
  if (uses_xm(d.structure)) {
    need(sig.xm, d.nm, "xm");
    put(sig.xm);
  } else {
    need(sig.wum, d.nm - 1, "wum");
    need(sig.wym, d.nm - 1, "wym");
    put(sig.wum);
    put(sig.wym);
    put1(sig.ym);
  }
  put1(sig.um);
  return w;
}

void check_gains(const Eigen::MatrixXd& Gamma, double gamma, double kp_bound) {
  if (Gamma.rows() != Gamma.cols() || Gamma.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "Gamma must be square and non-empty", "Gamma");
  if (!Gamma.isApprox(Gamma.transpose(), 1e-12))
    throw Error(ErrorCode::GainBoundViolation, "Gamma must be symmetric", "Gamma");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gamma, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw Error(ErrorCode::GainBoundViolation, "Gamma must be positive definite", "Gamma");
  if (!(hi < 2.0 / kp_bound))
    throw Error(ErrorCode::GainBoundViolation,
                "largest eigenvalue of Gamma (" + std::to_string(hi) + ") must be below 2/kp_bound = " +
                    std::to_string(2.0 / kp_bound),
                "Gamma");
  if (!(gamma > 0.0 && gamma < 2.0)) throw Error(ErrorCode::GainBoundViolation, "gamma must lie in (0, 2)", "gamma");
}

SisoGradientState SisoGradientState::make(Eigen::VectorXd theta, double rho, Eigen::MatrixXd Gamma, double gamma,
                                          int sign_kp, double kp_bound) {
  check_gains(Gamma, gamma, kp_bound);
  if (Gamma.rows() != theta.size())
    throw Error(ErrorCode::DimensionMismatch, "Gamma must match the parameter dimension", "Gamma");
  if (sign_kp != 1 && sign_kp != -1) throw Error(ErrorCode::ValidationError, "sign_kp must be +1 or -1", "sign_kp");
  return {std::move(theta), rho, std::move(Gamma), gamma, sign_kp};
}

SisoRegressorFrame frame_from(const SisoGradientState& st, const Eigen::VectorXd& omega, const Eigen::VectorXd& zeta,
                              double wm_u, double e) {
  SisoRegressorFrame f;
  f.omega = omega;
  f.zeta = zeta;
  f.xi = seq_dot(st.theta, zeta) - wm_u;
  f.epsilon = e + st.rho * f.xi;
  f.m2 = 1.0 + seq_dot(zeta, zeta) + f.xi * f.xi;
  f.m = std::sqrt(f.m2);
  return f;
}

SisoEstimator::SisoEstimator(const Polynomial& pm, Eigen::Index dim, TimeDomain domain)
    : zeta_(Polynomial::constant(1.0), pm, dim, domain), wu_(Polynomial::constant(1.0), pm, 1, domain) {}

SisoRegressorFrame SisoEstimator::estimation_frame(const SisoGradientState& st, const Eigen::VectorXd& omega,
                                                   double e) {
  if (omega.size() != zeta_.width() || st.theta.size() != omega.size())
    throw Error(ErrorCode::DimensionMismatch, "omega and theta must match the estimator dimension", "omega");
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(1, seq_dot(st.theta, omega));
  const Eigen::VectorXd zeta = zeta_.step(omega);
  const double wm_u = wu_.step(u)(0);
  return frame_from(st, omega, zeta, wm_u, e);
}

void siso_update(ConstVecRef theta, double rho, const Eigen::MatrixXd& Gamma, double gamma, int sign_kp,
                 ConstVecRef zeta, double xi, double eps, double m2, VecRef theta_out, double& rho_out) {
  const double c = eps / m2;
  const Eigen::VectorXd gz = Gamma * zeta;
  const double sc = static_cast<double>(sign_kp) * c;
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta_out(i) = theta(i) - gz(i) * sc;
  rho_out = rho - gamma * (xi * c);
}

SisoGradientState siso_gradient_step(const SisoGradientState& st, const SisoRegressorFrame& f) {
  SisoGradientState out = st;
  siso_update(st.theta, st.rho, st.Gamma, st.gamma, st.sign_kp, f.zeta, f.xi, f.epsilon, f.m2, out.theta, out.rho);
  return out;
}

}  // namespace mrac::siso
