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

#include "mrac/lti/analysis.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mrac/error.hpp"

namespace mrac {

double rank_tolerance(const Eigen::MatrixXd& M) {
  const double scale = M.size() == 0 ? 0.0 : M.norm();
  return 1e-9 * std::max(1.0, scale);
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const double tol = rank_tolerance(M);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd out(n, n * B.cols());
  Eigen::MatrixXd blk = B;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.middleCols(i * B.cols(), B.cols()) = blk;
    blk = (A * blk).eval();
  }
  return out;
}

Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd out(n * C.rows(), n);
  Eigen::MatrixXd blk = C;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.middleRows(i * C.rows(), C.rows()) = blk;
    blk = (blk * A).eval();
  }
  return out;
}

std::vector<Eigen::MatrixXd> markov_params(const StateSpace& sys, int count) {
  if (count < 1) throw Error(ErrorCode::ValidationError, "count must be at least 1", "count");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(count));
  Eigen::MatrixXd AkB = sys.B;
  for (int i = 0; i < count; ++i) {
    out.push_back(sys.C * AkB);
    AkB = (sys.A * AkB).eval();
  }
  return out;
}

int relative_degree(const StateSpace& sys, Eigen::Index output_row) {
  if (output_row < 0 || output_row >= sys.outputs())
    throw Error(ErrorCode::DimensionMismatch, "output row out of range", "output_row");
  const Eigen::Index n = sys.states();
  const Eigen::RowVectorXd c = sys.C.row(output_row);
  const double anorm = std::max(1.0, sys.A.norm());
  double scale = std::max(1.0, c.norm() * sys.B.norm());
  Eigen::RowVectorXd cAk = c;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const Eigen::RowVectorXd row = cAk * sys.B;
    if (row.cwiseAbs().maxCoeff() > 1e-9 * scale) return static_cast<int>(i);
    cAk = (cAk * sys.A).eval();
    scale *= anorm;
  }
  throw Error(ErrorCode::NoRelativeDegree, "all Markov parameters up to order n vanish");
}

Polynomial charpoly(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(n) = 1.0;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::MatrixXd AM = A * Mk;
    c(n - k) = -AM.trace() / static_cast<double>(k);
    Mk = AM;
    Mk.diagonal().array() += c(n - k);
  }
  return Polynomial(c);
}

SisoTransfer siso_transfer(const StateSpace& sys) {
  if (sys.inputs() != 1 || sys.outputs() != 1)
    throw Error(ErrorCode::DimensionMismatch, "siso_transfer needs a single-input single-output system");
  const Eigen::Index n = sys.states();
  SisoTransfer tf;
  tf.relative_degree = relative_degree(sys, 0);
  // Faddeev-LeVerrier: adj(D I - A) = sum_k M_k D^{n-k}.
  Eigen::VectorXd den = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd num = Eigen::VectorXd::Zero(n);
  den(n) = 1.0;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    num(n - k) = (sys.C.row(0) * Mk * sys.B.col(0)).value();
    const Eigen::MatrixXd AM = sys.A * Mk;
    den(n - k) = -AM.trace() / static_cast<double>(k);
    Mk = AM;
    Mk.diagonal().array() += den(n - k);
  }
  const Eigen::Index m = n - tf.relative_degree;
  tf.kp = markov_params(sys, tf.relative_degree).back()(0, 0);
  Eigen::VectorXd z = num.head(m + 1) / tf.kp;
  z(m) = 1.0;
  tf.zeros = Polynomial(z);
  tf.poles = Polynomial(den);
  return tf;
}

bool is_stable_matrix(const Eigen::MatrixXd& A, Domain domain) {
  if (A.rows() == 0) return true;
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lam = es.eigenvalues()(i);
    if (domain == Domain::Discrete ? std::abs(lam) >= 1.0 : lam.real() >= 0.0) return false;
  }
  return true;
}

Eigen::VectorXd pole_place(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Polynomial& target) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "pole_place needs square A and matching b");
  if (target.degree() != n || !target.is_monic())
    throw Error(ErrorCode::ValidationError, "target must be monic of degree n", "target");
  const Eigen::MatrixXd Ctrb = controllability_matrix(A, b);
  if (numerical_rank(Ctrb) < n) throw Error(ErrorCode::UncontrollablePair, "(A, b) is not controllable");
  // k^T = -e_n^T Ctrb^{-1} target(A)
  Eigen::VectorXd en = Eigen::VectorXd::Zero(n);
  en(n - 1) = 1.0;
  const Eigen::VectorXd w = Ctrb.transpose().fullPivLu().solve(en);
  return -(w.transpose() * target(A)).transpose();
}

Eigen::MatrixXd lyapunov_solve_ct(const Eigen::MatrixXd& A0, const Eigen::MatrixXd& Q) {
  const Eigen::Index n = A0.rows();
  if (A0.cols() != n || Q.rows() != n || Q.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "lyapunov_solve_ct needs square A0 and Q of equal size");
  if (!is_stable_matrix(A0, Domain::Continuous)) throw Error(ErrorCode::NotHurwitz, "A0 is not Hurwitz", "A0");
  // vec(P A0 + A0^T P) = (A0^T kron I + I kron A0^T) vec(P)
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n) = A0(j, i) * I;
      if (i == j) K.block(i * n, j * n, n, n) += A0.transpose();
    }
  const Eigen::MatrixXd negQ = -Q;
  const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(negQ.data(), n * n);
  const Eigen::VectorXd p = K.fullPivLu().solve(q);
  Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(p.data(), n, n);
  return 0.5 * (P + P.transpose());
}

}  // namespace mrac
