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

#include "mrac/lti/reference_params.hpp"

#include <cmath>

#include <Eigen/QR>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"
#include "mrac/lti/rational_filter.hpp"
#include "mrac/lti/signal.hpp"

namespace mrac {

RmStateParams rm_state_params(const StateSpace& ref, const DiagonalInteractor& xi) {
  const Eigen::Index M = ref.outputs();
  if (xi.size() != M) throw Error(ErrorCode::DimensionMismatch, "interactor size must match reference outputs");
  RmStateParams p;
  p.A1 = Eigen::MatrixXd::Zero(ref.states(), M);
  p.A2 = Eigen::MatrixXd::Zero(M, ref.inputs());
  for (Eigen::Index i = 0; i < M; ++i) {
    const Polynomial& d = xi.row(i);
    const int rho_m = relative_degree(ref, i);
    if (rho_m < d.degree())
      throw Error(ErrorCode::RelativeDegreeViolation,
                  "reference output " + std::to_string(i + 1) + " has relative degree " + std::to_string(rho_m) +
                      " below the interactor degree " + std::to_string(d.degree()));
    const Eigen::RowVectorXd ci = ref.C.row(i);
    p.A1.col(i) = (ci * d(ref.A)).transpose();
    // sum over j = 1..deg d of p_j c_i A^{j-1} B; terms with j < rho_m vanish exactly.
    Eigen::RowVectorXd cAk = ci;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(ref.inputs());
    for (int j = 1; j <= d.degree(); ++j) {
      if (j >= rho_m) row += d.coeff(j) * (cAk * ref.B);
      cAk = (cAk * ref.A).eval();
    }
    p.A2.row(i) = row;
  }
  return p;
}

RmStateParams rm_state_params(const StateSpace& ref, const Polynomial& pm) {
  return rm_state_params(ref, DiagonalInteractor({pm}, ref.domain.tag));
}

RmOutputParams rm_output_params(const StateSpace& ref, const DiagonalInteractor& xi, const Polynomial& lambda_e) {
  const Eigen::Index n = ref.states();
  const Eigen::Index M = ref.outputs();
  const Eigen::Index Mu = ref.inputs();
  if (numerical_rank(observability_matrix(ref.A, ref.C)) < n)
    throw Error(ErrorCode::UnobservablePair, "(A_m, C_m) is not observable");
  if (!lambda_e.is_monic() || !lambda_e.is_stable(ref.domain.tag))
    throw Error(ErrorCode::ValidationError, "lambda_e must be monic and stable", "lambda_e");
  const RmStateParams st = rm_state_params(ref, xi);

  const TimeDomain dom = ref.domain.is_discrete() ? ref.domain : TimeDomain::continuous(std::min(ref.domain.step, 1e-3));
  const FilterBank bank_u(lambda_e, Mu, dom);
  const FilterBank bank_y(lambda_e, M, dom);
  const Eigen::Index k = bank_u.blocks();
  const Eigen::Index p = k * Mu + k * M + M;

  const bool dt = dom.is_discrete();
  const ReferenceInput um = dt ? ReferenceInput::multisine(Mu, 8, 0.07, 3.0) : ReferenceInput::multisine(Mu, 8, 0.15, 6.0);
  const Eigen::Index samples = dt ? std::max<Eigen::Index>(200, 30 * p) : std::max<Eigen::Index>(2000, 100 * p);
  const Eigen::Index stride = dt ? 1 : 10;

  // Packed state [x_m, bank_u, bank_y], zero initial conditions.
  const Eigen::Index nu = bank_u.state_size(), ny = bank_y.state_size();
  const Eigen::Index ns = n + nu + ny;
  auto rate = [&](double t, const Eigen::VectorXd& X, Eigen::VectorXd& out) {
    const Eigen::VectorXd u = um(t);
    const Eigen::VectorXd xm = X.head(n);
    out.head(n) = ref.A * xm + ref.B * u;
    bank_u.advance(X.segment(n, nu), u, out.segment(n, nu));
    bank_y.advance(X.segment(n + nu, ny), ref.C * xm, out.segment(n + nu, ny));
  };

  Eigen::MatrixXd Phi(samples, p);
  Eigen::MatrixXd R(samples, M);
  Eigen::VectorXd X = Eigen::VectorXd::Zero(ns);
  Eigen::VectorXd k1(ns), k2(ns), k3(ns), k4(ns);
  Eigen::VectorXd wu(bank_u.output_size()), wy(bank_y.output_size());
  const double h = dom.step;
  Eigen::Index step_index = 0;
  for (Eigen::Index r = 0; r < samples; ++r) {
    const Eigen::VectorXd xm = X.head(n);
    bank_u.output(X.segment(n, nu), wu);
    bank_y.output(X.segment(n + nu, ny), wy);
    Phi.row(r) << wu.transpose(), wy.transpose(), (ref.C * xm).transpose();
    R.row(r) = (st.A1.transpose() * xm).transpose();
    for (Eigen::Index s = 0; s < stride; ++s, ++step_index) {
      const double t = static_cast<double>(step_index) * h;
      if (dt) {
        rate(t, X, k1);
        X = k1;
      } else {
        rate(t, X, k1);
        rate(t + 0.5 * h, X + 0.5 * h * k1, k2);
        rate(t + 0.5 * h, X + 0.5 * h * k2, k3);
        rate(t + h, X + h * k3, k4);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Phi);
  const Eigen::MatrixXd Xsol = cod.solve(R);  // p x M
  RmOutputParams out;
  out.B1 = Xsol.topRows(k * Mu).transpose();
  out.B2 = Xsol.middleRows(k * Mu, k * M).transpose();
  out.B20 = Xsol.bottomRows(M).transpose();
  out.A2 = st.A2;
  out.fit_residual = (Phi * Xsol - R).cwiseAbs().maxCoeff();
  return out;
}

RmOutputParams rm_output_params(const StateSpace& ref, const Polynomial& pm, const Polynomial& lambda_e) {
  return rm_output_params(ref, DiagonalInteractor({pm}, ref.domain.tag), lambda_e);
}

}  // namespace mrac
