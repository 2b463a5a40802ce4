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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"
#include "mrac/lti/interactor.hpp"
#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/rational_filter.hpp"
#include "mrac/lti/reference_params.hpp"
#include "mrac/lti/signal.hpp"
#include "mrac/lti/state_space.hpp"
#include "test_util.hpp"

namespace mrac {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::uniform;

MatrixXd M(std::initializer_list<std::initializer_list<double>> rows) {
  MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

const TimeDomain kDt = TimeDomain::discrete();

TEST(Polynomial, TrimsAndEvaluates) {
  const Polynomial p{2.0, -3.0, 1.0, 0.0};
  EXPECT_EQ(p.degree(), 2);
  EXPECT_TRUE(p.is_monic());
  EXPECT_DOUBLE_EQ(p(1.0), 0.0);
  EXPECT_DOUBLE_EQ(p(3.0), 2.0);
}

TEST(Polynomial, RootsAndProducts) {
  const Polynomial p = Polynomial::from_real_roots({0.5, -0.25});
  EXPECT_NEAR(p.coeff(0), -0.125, 1e-15);
  EXPECT_NEAR(p.coeff(1), -0.25, 1e-15);
  const Polynomial q = p * Polynomial{1.0, 1.0};
  EXPECT_EQ(q.degree(), 3);
  EXPECT_NEAR(q(-1.0), 0.0, 1e-14);
  EXPECT_TRUE(p.is_stable(Domain::Discrete));
  EXPECT_FALSE(p.is_stable(Domain::Continuous));
  EXPECT_FALSE(Polynomial::from_real_roots({1.5}).is_stable(Domain::Discrete));
  EXPECT_TRUE(Polynomial::power_of_linear(0.3, 0).degree() == 0);
}

TEST(RelativeDegree, DoubleIntegratorIsTwo) {
  StateSpace s(M({{0, 1}, {0, 0}}), M({{0}, {1}}), M({{1, 0}}), kDt);
  EXPECT_EQ(relative_degree(s), 2);
}

TEST(RelativeDegree, ScalarIsOne) {
  StateSpace s(M({{0.5}}), M({{1}}), M({{2}}), kDt);
  EXPECT_EQ(relative_degree(s), 1);
}

TEST(RelativeDegree, NonzeroFirstMarkovParameterIsOne) {
  StateSpace s(M({{-0.3, 0.2}, {0.1, -0.5}}), M({{1}, {0}}), M({{1, 1}}), kDt);
  EXPECT_EQ(relative_degree(s), 1);
}

TEST(RelativeDegree, VanishingMarkovParametersThrow) {
  StateSpace s(M({{0.5, 0}, {0, 0.2}}), M({{1}, {0}}), M({{0, 1}}), kDt);
  try {
    relative_degree(s);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRelativeDegree);
  }
}

TEST(RelativeDegree, RowSelectsOutput) {
  StateSpace s(M({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), M({{0, 0}, {1, 0}, {0, 1}}), M({{1, 0, 0}, {0, 0, 1}}), kDt);
  EXPECT_EQ(relative_degree(s, 0), 2);
  EXPECT_EQ(relative_degree(s, 1), 1);
}

TEST(Filter, StrictlyProperDelay) {
  RationalFilter f(Polynomial{1.0}, Polynomial{0.5, 1.0}, 1, kDt);
  EXPECT_DOUBLE_EQ(f.step(VectorXd::Ones(1))(0), 0.0);
  EXPECT_DOUBLE_EQ(f.step(VectorXd::Zero(1))(0), 1.0);
  EXPECT_DOUBLE_EQ(f.step(VectorXd::Zero(1))(0), -0.5);
}

TEST(Filter, ZeroInZeroOut) {
  RationalFilter f(Polynomial{0.2, 1.0}, Polynomial::from_real_roots({0.3, -0.4}), 2, kDt);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(f.step(VectorXd::Zero(2)).norm(), 0.0);
}

TEST(Filter, SuperpositionHolds) {
  std::mt19937_64 rng(7);
  const Polynomial num{0.3, -0.2, 1.0}, den = Polynomial::from_real_roots({0.5, -0.3, 0.1});
  RationalFilter a(num, den, 1, kDt), b(num, den, 1, kDt), c(num, den, 1, kDt);
  for (int k = 0; k < 50; ++k) {
    const double u1 = uniform(rng, -1, 1), u2 = uniform(rng, -1, 1);
    const double ya = a.step(VectorXd::Constant(1, u1))(0);
    const double yb = b.step(VectorXd::Constant(1, u2))(0);
    const double yc = c.step(VectorXd::Constant(1, u1 + u2))(0);
    EXPECT_NEAR(yc, ya + yb, 1e-14);
  }
}

TEST(Filter, RejectsUnstableOrImproper) {
  EXPECT_THROW(RationalFilter(Polynomial{1.0}, Polynomial{-1.5, 1.0}, 1, kDt), Error);
  EXPECT_THROW(RationalFilter(Polynomial{0.0, 0.0, 1.0}, Polynomial{0.5, 1.0}, 1, kDt), Error);
}

TEST(Filter, BiproperFeedthrough) {
  // (z + 0.1)/(z - 0.4): y(0) = u(0) from rest.
  RationalFilter f(Polynomial{0.1, 1.0}, Polynomial{-0.4, 1.0}, 1, kDt);
  EXPECT_DOUBLE_EQ(f.step(VectorXd::Constant(1, 2.0))(0), 2.0);
  // y(1) = 0.4 y(0) + u(1) + 0.1 u(0) = 0.8 + 0 + 0.2
  EXPECT_NEAR(f.step(VectorXd::Zero(1))(0), 1.0, 1e-15);
}

TEST(Filter, ContinuousFirstOrderMatchesExponential) {
  // 1/(s+1) driven by a unit step: 1 - exp(-t).
  const double h = 1e-3;
  RationalFilter f(Polynomial{1.0}, Polynomial{1.0, 1.0}, 1, TimeDomain::continuous(h));
  double y = 0.0;
  for (int k = 0; k <= 1000; ++k) y = f.step(VectorXd::Ones(1))(0);
  EXPECT_NEAR(y, 1.0 - std::exp(-1.0), 1e-10);
}

TEST(FilterBank, OutputsArePowersOverLambda) {
  // Lambda = (z - 0.5): one block, y(t) = u(t-1) + 0.5 y(t-1).
  FilterBank b(Polynomial{-0.5, 1.0}, 2, kDt);
  EXPECT_EQ(b.output_size(), 2);
  b.step((VectorXd(2) << 1.0, 2.0).finished());
  const VectorXd y = b.step(VectorXd::Zero(2));
  EXPECT_DOUBLE_EQ(y(0), 1.0);
  EXPECT_DOUBLE_EQ(y(1), 2.0);
  FilterBank empty(Polynomial{1.0}, 3, kDt);
  EXPECT_EQ(empty.output_size(), 0);
}

TEST(MarkovParams, ZeroMatrix) {
  StateSpace s(MatrixXd::Zero(2, 2), M({{1}, {2}}), M({{1, 1}}), kDt);
  const auto mp = markov_params(s, 3);
  EXPECT_DOUBLE_EQ(mp[0](0, 0), 3.0);
  EXPECT_DOUBLE_EQ(mp[1](0, 0), 0.0);
  EXPECT_DOUBLE_EQ(mp[2](0, 0), 0.0);
}

TEST(MarkovParams, IdentityRepeats) {
  StateSpace s(MatrixXd::Identity(1, 1), M({{3}}), M({{0.5}}), kDt);
  for (const auto& m : markov_params(s, 4)) EXPECT_DOUBLE_EQ(m(0, 0), 1.5);
}

TEST(MarkovParams, DoubleIntegrator) {
  StateSpace s(M({{0, 1}, {0, 0}}), M({{0}, {1}}), M({{1, 0}}), kDt);
  const auto mp = markov_params(s, 3);
  EXPECT_DOUBLE_EQ(mp[0](0, 0), 0.0);
  EXPECT_DOUBLE_EQ(mp[1](0, 0), 1.0);
  EXPECT_DOUBLE_EQ(mp[2](0, 0), 0.0);
}

TEST(PolePlace, ScalarExample) {
  const VectorXd k = pole_place(M({{0.5}}), VectorXd::Ones(1), Polynomial{-0.2, 1.0});
  EXPECT_NEAR(k(0), -0.3, 1e-15);
}

TEST(PolePlace, AlreadyPlacedGivesZero) {
  const MatrixXd A = M({{0, 1}, {-0.06, 0.5}});
  const VectorXd k = pole_place(A, (VectorXd(2) << 0, 1).finished(), Polynomial::from_real_roots({0.2, 0.3}));
  EXPECT_LT(k.norm(), 1e-14);
}

TEST(PolePlace, RandomThreeByThreeEigenvalues) {
  std::mt19937_64 rng(11);
  const MatrixXd A = testing::random_matrix(rng, 3, 3);
  const VectorXd b = testing::random_matrix(rng, 3, 1);
  const std::vector<double> roots{0.1, -0.35, 0.6};
  const VectorXd k = pole_place(A, b, Polynomial::from_real_roots(roots));
  Eigen::VectorXcd ev = (A + b * k.transpose()).eigenvalues();
  std::vector<double> got;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    EXPECT_NEAR(ev(i).imag(), 0.0, 1e-6);
    got.push_back(ev(i).real());
  }
  std::sort(got.begin(), got.end());
  std::vector<double> want = roots;
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(got[i], want[i], 1e-6);
}

TEST(PolePlace, UncontrollableThrows) {
  try {
    pole_place(M({{0.5, 0}, {0, 0.3}}), (VectorXd(2) << 1, 0).finished(), Polynomial::from_real_roots({0.1, 0.2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncontrollablePair);
  }
}

TEST(RmStateParams, ScalarExample) {
  StateSpace ref(M({{0.5}}), M({{1}}), M({{2}}), kDt);
  const RmStateParams p = rm_state_params(ref, Polynomial{0.4, 1.0});
  EXPECT_NEAR(p.A1(0, 0), 1.8, 1e-15);
  EXPECT_NEAR(p.A2(0, 0), 2.0, 1e-15);
}

TEST(RmStateParams, HigherReferenceRelativeDegreeGivesZeroInputGain) {
  StateSpace ref(M({{0, 1}, {-0.2, 0.3}}), M({{0}, {1}}), M({{1, 0}}), kDt);
  const RmStateParams p = rm_state_params(ref, Polynomial{0.4, 1.0});
  EXPECT_EQ(p.A2(0, 0), 0.0);
}

TEST(RmStateParams, LowerReferenceRelativeDegreeThrows) {
  StateSpace ref(M({{0.5}}), M({{1}}), M({{2}}), kDt);
  try {
    rm_state_params(ref, Polynomial::from_real_roots({0.1, 0.2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RelativeDegreeViolation);
  }
}

TEST(RmStateParams, DiscreteTrajectoryIdentity) {
  // Third-order reference with relative degree 2 in canonical form.
  StateSpace ref(M({{0, 1, 0}, {0, 0, 1}, {0.1, -0.2, 0.3}}), M({{0}, {0}, {1}}), M({{0.4, 1.0, 0.0}}), kDt);
  const Polynomial pm = Polynomial::from_real_roots({0.2, -0.3});
  const RmStateParams p = rm_state_params(ref, pm);
  const ReferenceInput in = ReferenceInput::multisine(1, 3, 0.2, 2.0);
  const auto run = testing::simulate_dt(ref, (VectorXd(3) << 0.5, -1.0, 0.2).finished(), 205,
                                        [&](int t) { return in(t); });
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    double shifted = 0.0;
    for (int j = 0; j <= pm.degree(); ++j) shifted += pm.coeff(j) * run.y[static_cast<std::size_t>(t + j)](0);
    const double param = (p.A1.transpose() * run.x[static_cast<std::size_t>(t)])(0) + (p.A2 * in(t))(0);
    worst = std::max(worst, std::abs(shifted - param));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(RmOutputParams, FirstOrderClosedForm) {
  // r_m = (a_m + p0) y_m + c_m b_m u_m.
  StateSpace ref(M({{0.5}}), M({{1}}), M({{2}}), kDt);
  const RmOutputParams p = rm_output_params(ref, Polynomial{0.4, 1.0}, Polynomial{1.0});
  EXPECT_EQ(p.B1.size(), 0);
  EXPECT_EQ(p.B2.size(), 0);
  EXPECT_NEAR(p.B20(0, 0), 0.9, 1e-10);
  EXPECT_NEAR(p.A2(0, 0), 2.0, 1e-10);
}

TEST(RmOutputParams, ThirdOrderFitReproducesIdentityOnFreshInput) {
  StateSpace ref(M({{0, 1, 0}, {0, 0, 1}, {0.18, -0.6, 1.1}}), M({{0}, {0}, {1}}), M({{0.06, 0.3, 0}}), kDt);
  const Polynomial pm = Polynomial::from_real_roots({0.5, 0.3});
  const Polynomial le = Polynomial::from_real_roots({0.4, 0.25});
  const RmOutputParams p = rm_output_params(ref, pm, le);
  const RmStateParams s = rm_state_params(ref, pm);
  // Different excitation from the identification record, nonzero initial state.
  ReferenceInput in({{{0.9, 0.45, 0.2}, {0.3, 1.9, 0.0}}}, VectorXd::Zero(1));
  FilterBank wu(le, 1, kDt), wy(le, 1, kDt);
  VectorXd x = (VectorXd(3) << 1.0, -0.5, 0.3).finished();
  double late = 0.0;
  for (int t = 0; t < 400; ++t) {
    const VectorXd u = in(t);
    const VectorXd y = ref.C * x;
    const VectorXd a = wu.step(u), b = wy.step(y);
    const double fit = (p.B1 * a)(0) + (p.B2 * b)(0) + (p.B20 * y)(0) + (p.A2 * u)(0);
    const double truth = (s.A1.transpose() * x)(0) + (s.A2 * u)(0);
    if (t >= 200) late = std::max(late, std::abs(fit - truth));
    x = ref.A * x + ref.B * u;
  }
  EXPECT_LT(late, 1e-6);
}

TEST(RmOutputParams, UnobservableThrows) {
  StateSpace ref(M({{0.5, 0}, {0, 0.2}}), M({{1}, {1}}), M({{1, 0}}), kDt);
  try {
    rm_output_params(ref, Polynomial{0.4, 1.0}, Polynomial{-0.3, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnobservablePair);
  }
}

TEST(Lyapunov, DiagonalClosedForm) {
  const MatrixXd P = lyapunov_solve_ct(-M({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}), MatrixXd::Identity(3, 3));
  EXPECT_NEAR(P(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(P(1, 1), 0.25, 1e-14);
  EXPECT_NEAR(P(2, 2), 0.125, 1e-14);
  EXPECT_NEAR(P(0, 1), 0.0, 1e-14);
}

TEST(Lyapunov, NegativeIdentity) {
  const MatrixXd P = lyapunov_solve_ct(-MatrixXd::Identity(2, 2), 2.0 * MatrixXd::Identity(2, 2));
  EXPECT_LT((P - MatrixXd::Identity(2, 2)).norm(), 1e-14);
}

TEST(Lyapunov, NotHurwitzThrows) {
  try {
    lyapunov_solve_ct(M({{0.1, 0}, {0, -1}}), MatrixXd::Identity(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHurwitz);
  }
}

TEST(Interactor, RejectsUnstableRow) {
  EXPECT_THROW(DiagonalInteractor({Polynomial{0.5, 1.0}, Polynomial{-2.0, 1.0}}, Domain::Continuous), Error);
  const DiagonalInteractor ok({Polynomial{2.0, 1.0}, Polynomial{2.0, 3.0, 1.0}}, Domain::Continuous);
  EXPECT_EQ(ok.max_degree(), 2);
}

}  // namespace
}  // namespace mrac
