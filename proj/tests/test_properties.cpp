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

// Randomized invariants. Every loop is seeded so failures reproduce.

#include <gtest/gtest.h>

#include <cmath>

#include "mrac/error.hpp"
#include "mrac/fl/controller.hpp"
#include "mrac/lti/analysis.hpp"
#include "mrac/lti/rational_filter.hpp"
#include "mrac/lti/reference_params.hpp"
#include "mrac/mimo/adaptive.hpp"
#include "mrac/oracle/benchmarks.hpp"
#include "mrac/oracle/fl_benchmark.hpp"
#include "mrac/oracle/siso_nominal.hpp"
#include "mrac/siso/adaptive.hpp"
#include "test_util.hpp"

namespace mrac {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::random_matrix;
using testing::uniform;

constexpr int kTrials = 50;
const TimeDomain kDt = TimeDomain::discrete();

TEST(Property, RelativeDegreeIsCoordinateFree) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = 2 + trial % 4;
    const int nstar = 1 + trial % n;
    // Canonical plant with nstar - 1 leading zero Markov parameters.
    Polynomial Z{1.0};
    for (int i = 0; i < n - nstar; ++i) Z = Z * Polynomial{uniform(rng, -0.9, 0.9), 1.0};
    Polynomial P{1.0};
    for (int i = 0; i < n; ++i) P = P * Polynomial{uniform(rng, -1.2, 1.2), 1.0};
    const StateSpace s = oracle::from_transfer(uniform(rng, 0.5, 2.0), Z, P, kDt);
    MatrixXd T = random_matrix(rng, n, n) + 2.0 * MatrixXd::Identity(n, n);
    EXPECT_EQ(relative_degree(s), nstar);
    EXPECT_EQ(relative_degree(s.transformed(T)), nstar);
  }
}

TEST(Property, FilterIsLinearAndShiftInvariant) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int k = 1 + trial % 4;
    Polynomial den{1.0}, num{uniform(rng, -1, 1)};
    for (int i = 0; i < k; ++i) den = den * Polynomial{uniform(rng, -0.9, 0.9), 1.0};
    for (int i = 1; i <= k - (trial % 2); ++i) num = num * Polynomial{uniform(rng, -1, 1), 1.0};
    std::vector<double> u(60);
    for (double& v : u) v = uniform(rng, -1, 1);
    const double a = uniform(rng, -2, 2);
    RationalFilter f1(num, den, 1, kDt), f2(num, den, 1, kDt), f3(num, den, 1, kDt);
    std::vector<double> y(60), ys(60);
    for (int t = 0; t < 60; ++t) {
      y[t] = f1.step(VectorXd::Constant(1, u[t]))(0);
      const double scaled = f2.step(VectorXd::Constant(1, a * u[t]))(0);
      EXPECT_NEAR(scaled, a * y[t], 1e-12 * (1 + std::abs(scaled)));
      // Delayed input from rest gives the delayed output.
      ys[t] = f3.step(VectorXd::Constant(1, t >= 3 ? u[t - 3] : 0.0))(0);
    }
    for (int t = 3; t < 60; ++t) EXPECT_NEAR(ys[t], y[t - 3], 1e-12 * (1 + std::abs(y[t - 3])));
  }
}

TEST(Property, StateFeedbackMatchingOnRandomPlants) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 30; ++trial) {
    const auto prob = oracle::random_coprime_problem(rng, 2 + trial % 3);
    const StateSpace plant = oracle::from_transfer(prob.kp, prob.Z, prob.P, kDt);
    const StateSpace ref = oracle::from_transfer(1.0, Polynomial{1.0}, prob.pm, kDt);
    const auto nom = oracle::siso_nominal_sf(plant, ref, prob.pm);
    const StateSpace cl(plant.A + plant.B * nom.k1.transpose(), plant.B * nom.k2, plant.C, kDt);
    const int count = static_cast<int>(2 * plant.states());
    const auto mp = markov_params(cl, count);
    const auto h = testing::impulse_series(Polynomial{1.0}, prob.pm, count);
    for (int i = 0; i < count; ++i) EXPECT_NEAR(mp[static_cast<std::size_t>(i)](0, 0), h[static_cast<std::size_t>(i + 1)], 1e-8);
  }
}

TEST(Property, DiophantineResidualOnRandomPlants) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto p = oracle::random_coprime_problem(rng, 2 + trial % 4);
    const auto s = oracle::siso_nominal_of(p.kp, p.Z, p.P, p.pm, p.lambda);
    const int n = p.P.degree();
    double worst = 0.0;
    for (int k = 0; k < 2 * n + 2; ++k) {
      const double z = uniform(rng, -1.5, 1.5);
      Polynomial t1{0.0}, t2{0.0};
      for (int j = 0; j < n - 1; ++j) {
        t1 = t1 + Polynomial::monomial(j) * s.theta1(j);
        t2 = t2 + Polynomial::monomial(j) * s.theta2(j);
      }
      const Polynomial lhs = t1 * p.P + (t2 + p.lambda * s.theta20) * p.Z * p.kp;
      const Polynomial rhs = p.lambda * (p.P - p.Z * p.pm * (p.kp * s.theta3));
      worst = std::max(worst, std::abs(lhs(z) - rhs(z)));
    }
    EXPECT_LT(worst, 1e-9) << "trial " << trial;
  }
}

TEST(Property, ReferenceParametersReproduceShiftedOutput) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    StateSpace ref(testing::random_stable_dt(rng, n, 0.9), random_matrix(rng, n, 1), random_matrix(rng, 1, n), kDt);
    int rd = 0;
    try {
      rd = relative_degree(ref);
    } catch (const Error&) {
      continue;
    }
    const Polynomial pm = Polynomial::power_of_linear(uniform(rng, -0.5, 0.5), rd);
    const auto p = rm_state_params(ref, pm);
    std::vector<double> u(100);
    for (double& v : u) v = uniform(rng, -1, 1);
    const auto run = testing::simulate_dt(ref, random_matrix(rng, n, 1), 100, [&](int t) { return VectorXd::Constant(1, u[t]); });
    for (int t = 0; t + rd < 100; ++t) {
      double lhs = 0.0;
      for (int j = 0; j <= rd; ++j) lhs += pm.coeff(j) * run.y[static_cast<std::size_t>(t + j)](0);
      const double rhs = p.A1.col(0).dot(run.x[static_cast<std::size_t>(t)]) + p.A2(0, 0) * u[t];
      EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(lhs)));
    }
  }
}

TEST(Property, NormalizationIsAtLeastOne) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < kTrials; ++trial) {
    const Eigen::Index d = 1 + trial % 6;
    const auto st = siso::SisoGradientState::make(random_matrix(rng, d, 1), uniform(rng, -2, 2), 0.5 * MatrixXd::Identity(d, d),
                                                  1.0, 1, 1.0);
    const auto f = siso::frame_from(st, random_matrix(rng, d, 1, 1e3), random_matrix(rng, d, 1, 1e3), uniform(rng, -1, 1),
                                    uniform(rng, -1e3, 1e3));
    EXPECT_GE(f.m, 1.0);
    EXPECT_NEAR(f.m * f.m, f.m2, 1e-9 * f.m2);
  }
}

TEST(Property, SisoUpdateNeverIncreasesLyapunovFunction) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 1 + trial % 5;
    const double kp_bound = uniform(rng, 0.5, 3.0);
    const double rho_star = uniform(rng, 0.1, 1.0) * kp_bound * (trial % 2 ? 1 : -1);
    const int sign = rho_star > 0 ? 1 : -1;
    const MatrixXd R = random_matrix(rng, d, d);
    MatrixXd G = R * R.transpose() + 0.1 * MatrixXd::Identity(d, d);
    G *= uniform(rng, 0.1, 1.99) / (kp_bound * G.eigenvalues().real().maxCoeff());
    const double gamma = uniform(rng, 0.05, 1.99);
    const VectorXd theta_star = random_matrix(rng, d, 1);
    const auto st = siso::SisoGradientState::make(random_matrix(rng, d, 1), uniform(rng, -2, 2), G, gamma, sign, kp_bound);
    siso::SisoRegressorFrame f;
    f.zeta = random_matrix(rng, d, 1, 3.0);
    f.xi = uniform(rng, -3, 3);
    f.epsilon = rho_star * (st.theta - theta_star).dot(f.zeta) + (st.rho - rho_star) * f.xi;
    f.m2 = 1 + f.zeta.squaredNorm() + f.xi * f.xi;
    const auto V = [&](const siso::SisoGradientState& s) {
      const VectorXd th = s.theta - theta_star;
      return std::abs(rho_star) * th.dot(G.llt().solve(th)) + (s.rho - rho_star) * (s.rho - rho_star) / gamma;
    };
    const double v0 = V(st), v1 = V(siso::siso_gradient_step(st, f));
    EXPECT_LE(v1 - v0, 1e-12 * (1 + v0)) << "trial " << trial;
  }
}

TEST(Property, MimoUpdateNeverIncreasesLyapunovFunction) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index M = 1 + trial % 3, d = M + 1 + trial % 4;
    MatrixXd Kp = random_matrix(rng, M, M) + 1.5 * MatrixXd::Identity(M, M);
    const MatrixXd Sp = oracle::scaled_sp(Kp, uniform(rng, 0.1, 1.9));
    const MatrixXd R = random_matrix(rng, M, M);
    MatrixXd G = R * R.transpose() + 0.1 * MatrixXd::Identity(M, M);
    G *= uniform(rng, 0.1, 1.9) / G.eigenvalues().real().maxCoeff();
    const MatrixXd Theta_star = random_matrix(rng, d, M);
    const auto st = mimo::MimoGradientState::make(random_matrix(rng, d, M), random_matrix(rng, M, M), G, Sp, kDt);
    mimo::MimoFrame f;
    f.zeta = random_matrix(rng, d, 1, 3.0);
    f.xi = random_matrix(rng, M, 1, 3.0);
    f.epsilon = Kp * (st.Theta - Theta_star).transpose() * f.zeta + (st.Psi - Kp) * f.xi;
    f.m2 = 1 + f.zeta.squaredNorm() + f.xi.squaredNorm();
    MatrixXd Gp = Kp.transpose() * Sp.inverse();
    Gp = 0.5 * (Gp + Gp.transpose());
    const auto V = [&](const mimo::MimoGradientState& s) {
      const MatrixXd Th = s.Theta - Theta_star, Ps = s.Psi - Kp;
      return (Th * Gp * Th.transpose()).trace() + (Ps.transpose() * G.inverse() * Ps).trace();
    };
    const double v0 = V(st), v1 = V(mimo::mimo_gradient_step(st, f, kDt));
    EXPECT_LE(v1 - v0, 1e-11 * (1 + v0)) << "trial " << trial;
  }
}

TEST(Property, LyapunovSolverResidual) {
  std::mt19937_64 rng(108);
  for (int trial = 0; trial < kTrials; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    MatrixXd A = random_matrix(rng, n, n);
    A -= (A.eigenvalues().real().maxCoeff() + uniform(rng, 0.1, 2.0)) * MatrixXd::Identity(n, n);
    const MatrixXd R = random_matrix(rng, n, n);
    const MatrixXd Q = R * R.transpose() + MatrixXd::Identity(n, n);
    const MatrixXd P = lyapunov_solve_ct(A, Q);
    EXPECT_LT((P * A + A.transpose() * P + Q).norm(), 1e-9 * (1 + P.norm()));
    EXPECT_GT(P.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Property, LinearizingControlSolvesItsEquation) {
  std::mt19937_64 rng(109);
  const auto b = oracle::fl_benchmark();
  for (int trial = 0; trial < kTrials; ++trial) {
    fl::FlParams p = b.truth.params;
    p.Theta1 += random_matrix(rng, p.Theta1.rows(), p.Theta1.cols(), 0.5);
    p.Theta2 += random_matrix(rng, p.Theta2.rows(), p.Theta2.cols(), 0.3);
    const VectorXd x = random_matrix(rng, 3, 1, 2.0), v = random_matrix(rng, 2, 1, 5.0);
    const auto est = fl::fl_assemble_estimates(b.structure, p, x);
    const VectorXd u = fl::fl_control(est, v);
    EXPECT_LT((est.A * u - (v - est.b)).norm(), 1e-12 * (1 + v.norm() + est.b.norm()));
  }
}

}  // namespace
}  // namespace mrac
