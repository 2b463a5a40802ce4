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

#include "mrac/oracle/siso_nominal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"
#include "mrac/lti/reference_params.hpp"

namespace mrac::oracle {

namespace {

void require_siso(const StateSpace& sys, const char* field) {
  if (sys.inputs() != 1 || sys.outputs() != 1) {
    throw Error(ErrorCode::DimensionMismatch, std::string(field) + " must be single-input single-output", field);
  }
}

// Coefficient j of p written into column `col`, shifted up by `shift` powers.
void put_shifted(Eigen::MatrixXd& M, Eigen::Index col, const Polynomial& p, int shift, double scale) {
  for (int j = 0; j <= p.degree(); ++j) {
    const Eigen::Index row = j + shift;
    if (row < M.rows()) M(row, col) += scale * p.coeff(j);
  }
}

}  // namespace

SisoSfNominal siso_nominal_sf(const StateSpace& plant, const StateSpace& ref, const Polynomial& pm) {
  require_siso(plant, "plant");
  require_siso(ref, "reference");
  const SisoTransfer g = siso_transfer(plant);
  if (pm.degree() != g.relative_degree) {
    throw Error(ErrorCode::RelativeDegreeViolation,
                "pm degree " + std::to_string(pm.degree()) + " differs from plant relative degree " +
                    std::to_string(g.relative_degree),
                "pm");
  }
  if (g.zeros.degree() > 0 && !g.zeros.is_stable(plant.domain.tag)) {
    throw Error(ErrorCode::ValidationError, "plant is not minimum phase", "plant");
  }
  SisoSfNominal out;
  out.kp = g.kp;
  out.zeros = g.zeros;
  out.k1 = pole_place(plant.A, plant.B.col(0), g.zeros * pm);
  out.k2 = 1.0 / g.kp;
  const RmStateParams rm = rm_state_params(ref, pm);
  out.alpha1 = rm.A1.col(0);
  out.alpha2 = rm.A2(0, 0);
  return out;
}

SisoOfNominal siso_nominal_of(double kp, const Polynomial& Z, const Polynomial& P, const Polynomial& pm,
                              const Polynomial& lambda) {
  const int n = P.degree();
  if (lambda.degree() != n - 1) {
    throw Error(ErrorCode::ValidationError, "lambda must have degree n-1", "lambda");
  }
  if (pm.degree() != n - Z.degree()) {
    throw Error(ErrorCode::RelativeDegreeViolation, "pm degree must equal n - deg Z", "pm");
  }
  const Eigen::Index unknowns = 2 * n - 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(unknowns, unknowns);
  for (int j = 0; j + 1 < n; ++j) {
    put_shifted(M, j, P, j, 1.0);
    put_shifted(M, (n - 1) + j, Z, j, kp);
  }
  put_shifted(M, 2 * (n - 1), lambda * Z, 0, kp);

  const Polynomial rhs_poly = lambda * (P - Z * pm);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (Eigen::Index i = 0; i < unknowns; ++i) rhs(i) = rhs_poly.coeff(static_cast<int>(i));
  if (rhs_poly.degree() >= unknowns && !rhs_poly.is_zero()) {
    throw Error(ErrorCode::SingularMatchingSystem, "matching right-hand side exceeds system order", "plant");
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-11);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::SingularMatchingSystem, "matching system is singular: Z and P are not coprime", "plant");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);

  SisoOfNominal out;
  out.theta1 = sol.head(n - 1);
  out.theta2 = sol.segment(n - 1, n - 1);
  out.theta20 = sol(2 * (n - 1));
  out.theta3 = 1.0 / kp;
  out.kp = kp;
  out.zeros = Z;
  out.poles = P;

  // Identity residual at 2n+2 points spread over [-1.5, 1.5].
  const int pts = 2 * n + 2;
  for (int k = 0; k < pts; ++k) {
    const double z = -1.5 + 3.0 * k / (pts - 1);
    double a1 = 0.0, a2 = 0.0, zp = 1.0;
    for (int j = 0; j + 1 < n; ++j) {
      a1 += out.theta1(j) * zp;
      a2 += out.theta2(j) * zp;
      zp *= z;
    }
    const double lhs = a1 * P(z) + (a2 + out.theta20 * lambda(z)) * kp * Z(z);
    const double r = lambda(z) * (P(z) - kp * out.theta3 * Z(z) * pm(z));
    out.residual = std::max(out.residual, std::abs(lhs - r));
  }
  return out;
}

SisoOfNominal siso_nominal_of(const StateSpace& plant, const Polynomial& pm, const Polynomial& lambda) {
  require_siso(plant, "plant");
  const SisoTransfer g = siso_transfer(plant);
  return siso_nominal_of(g.kp, g.zeros, g.poles, pm, lambda);
}

SisoOracle siso_theta_star(const StateSpace& plant, const StateSpace& ref, const siso::SisoDesign& design) {
  design.validate();
  SisoOracle out;
  out.theta.resize(siso::regressor_size(design));
  Eigen::Index o = 0;
  auto put = [&](const Eigen::VectorXd& v) {
    out.theta.segment(o, v.size()) = v;
    o += v.size();
  };
  auto scalar = [](double v) { return Eigen::VectorXd::Constant(1, v); };

  double gain = 0.0;
  RmStateParams rm = rm_state_params(ref, design.pm);
  if (uses_state(design.structure)) {
    const SisoSfNominal sf = siso_nominal_sf(plant, ref, design.pm);
    put(sf.k1);
    gain = sf.k2;
    out.rho = sf.kp;
  } else {
    const SisoOfNominal of = siso_nominal_of(plant, design.pm, design.lambda);
    put(of.theta1);
    put(of.theta2);
    put(scalar(of.theta20));
    gain = of.theta3;
    out.rho = of.kp;
  }
  if (uses_xm(design.structure)) {
    put(gain * rm.A1.col(0));
    put(scalar(gain * rm.A2(0, 0)));
  } else {
    const RmOutputParams op = rm_output_params(ref, design.pm, design.lambda_e);
    put(gain * op.B1.row(0).transpose());
    put(gain * op.B2.row(0).transpose());
    put(scalar(gain * op.B20(0, 0)));
    put(scalar(gain * op.A2(0, 0)));
  }
  if (o != out.theta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "theta* layout does not match the regressor", "structure");
  }
  return out;
}

}  // namespace mrac::oracle
