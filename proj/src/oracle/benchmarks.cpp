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

#include "mrac/oracle/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mrac/error.hpp"
#include "mrac/lti/analysis.hpp"

namespace mrac::oracle {

namespace {

using Eigen::MatrixXd;

MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  MatrixXd m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Six equal-amplitude tones spread over (0, pi): enough distinct frequencies to
// excite every regressor layout up to the 3rd-order benchmarks.
ReferenceInput dt_input(Eigen::Index width) {
  std::vector<std::vector<Sinusoid>> ch;
  for (Eigen::Index c = 0; c < width; ++c) {
    const double s = 0.11 * static_cast<double>(c);
    std::vector<Sinusoid> tones;
    for (int k = 0; k < 6; ++k) tones.push_back({1.0, 0.15 + 0.48 * k + s, 1.3 * k + 0.7 * s});
    ch.push_back(std::move(tones));
  }
  return ReferenceInput(ch, Eigen::VectorXd::Zero(width));
}

ReferenceInput ct_input(Eigen::Index width) {
  std::vector<std::vector<Sinusoid>> ch;
  for (Eigen::Index c = 0; c < width; ++c) {
    const double s = 0.2 * static_cast<double>(c);
    ch.push_back({{1.0, 0.5 + s, 0.0}, {0.6, 1.3 + s, 0.7}, {0.4, 2.9 - s, 1.3}});
  }
  return ReferenceInput(ch, Eigen::VectorXd::Zero(width));
}

Polynomial poly_from_real_or_pair(std::mt19937_64& rng, int degree, double radius) {
  std::vector<std::complex<double>> roots;
  while (static_cast<int>(roots.size()) < degree) {
    if (degree - static_cast<int>(roots.size()) >= 2 && uniform(rng, 0.0, 1.0) < 0.3) {
      const double r = uniform(rng, 0.2, radius);
      const double a = uniform(rng, 0.3, 2.8);
      roots.emplace_back(r * std::cos(a), r * std::sin(a));
      roots.emplace_back(r * std::cos(a), -r * std::sin(a));
    } else {
      roots.emplace_back(uniform(rng, -radius, radius), 0.0);
    }
  }
  return Polynomial::from_roots(roots);
}

double min_root_gap(const Polynomial& a, const Polynomial& b) {
  double gap = 1e300;
  if (a.degree() == 0 || b.degree() == 0) return gap;
  for (const auto& ra : a.roots())
    for (const auto& rb : b.roots()) gap = std::min(gap, std::abs(ra - rb));
  return gap;
}

}  // namespace

StateSpace from_transfer(double kp, const Polynomial& Z, const Polynomial& P, TimeDomain domain) {
  const int n = P.degree();
  if (!P.is_monic() || n < 1 || Z.degree() >= n) {
    throw Error(ErrorCode::ValidationError, "need monic P and deg Z < deg P", "plant");
  }
  MatrixXd A = MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) A(n - 1, j) = -P.coeff(j);
  MatrixXd B = MatrixXd::Zero(n, 1);
  B(n - 1, 0) = 1.0;
  MatrixXd C = MatrixXd::Zero(1, n);
  for (int j = 0; j <= Z.degree(); ++j) C(0, j) = kp * Z.coeff(j);
  return StateSpace(A, B, C, domain);
}

SisoBenchmark siso_scalar_benchmark() {
  SisoBenchmark b;
  b.id = "siso_scalar";
  b.description = "scalar DT plant a=0.5, b=1, c=2; identical reference model; P_m = z + 0.4";
  const auto dt = TimeDomain::discrete();
  b.world.plant = StateSpace(rows({{0.5}}), rows({{1.0}}), rows({{2.0}}), dt);
  b.world.reference = StateSpace(rows({{0.5}}), rows({{1.0}}), rows({{2.0}}), dt);
  b.world.input = dt_input(1);
  b.design.n = 1;
  b.design.nm = 1;
  b.design.pm = Polynomial{0.4, 1.0};
  b.design.lambda = Polynomial{1.0};
  b.design.lambda_e = Polynomial{1.0};
  b.design.sign_kp = 1;
  b.design.kp_bound = 4.0;  // Gamma default 0.25 I, a power of two
  return b;
}

SisoBenchmark siso_dt2_benchmark() {
  SisoBenchmark b;
  b.id = "siso_dt2";
  b.description = "unstable 2nd-order DT plant 0.8/((z-1.1)(z-0.5)); reference 0.5/(z^2-0.6z+0.25)";
  const auto dt = TimeDomain::discrete();
  b.world.plant = from_transfer(0.8, Polynomial{1.0}, Polynomial::from_real_roots({1.1, 0.5}), dt);
  b.world.reference = from_transfer(0.5, Polynomial{1.0}, Polynomial{0.25, -0.6, 1.0}, dt);
  b.world.input = dt_input(1);
  b.design.n = 2;
  b.design.nm = 2;
  b.design.pm = Polynomial::from_real_roots({0.2, 0.3});
  b.design.lambda = Polynomial::from_real_roots({0.3});
  b.design.lambda_e = Polynomial::from_real_roots({0.35});
  b.design.sign_kp = 1;
  b.design.kp_bound = 1.0;
  return b;
}

SisoBenchmark siso_dt3_benchmark() {
  SisoBenchmark b;
  b.id = "siso_dt3";
  b.description = "unstable minimum-phase 3rd-order DT plant 1.2(z-0.4)/((z-1.05)(z^2-0.8z+0.32)), similarity-transformed";
  const auto dt = TimeDomain::discrete();
  const StateSpace canon = from_transfer(1.2, Polynomial::from_real_roots({0.4}),
                                         Polynomial::from_real_roots({1.05}) * Polynomial{0.32, -0.8, 1.0}, dt);
  const MatrixXd T = rows({{1.0, 0.3, -0.2}, {0.1, 1.0, 0.4}, {-0.3, 0.2, 1.0}});
  b.world.plant = canon.transformed(T);
  b.world.reference = from_transfer(0.3, Polynomial{0.2, 1.0},
                                    Polynomial::from_real_roots({0.6}) * Polynomial{0.3, -0.5, 1.0}, dt);
  b.world.input = dt_input(1);
  b.design.n = 3;
  b.design.nm = 3;
  b.design.pm = Polynomial::from_real_roots({0.5, 0.3});
  b.design.lambda = Polynomial::from_real_roots({0.3, 0.2});
  b.design.lambda_e = Polynomial::from_real_roots({0.4, 0.25});
  b.design.sign_kp = 1;
  b.design.kp_bound = 2.0;
  return b;
}

Eigen::MatrixXd scaled_sp(const Eigen::MatrixXd& Kp, double target) {
  const Eigen::SelfAdjointEigenSolver<MatrixXd> es(Kp * Kp.transpose());
  return (target / es.eigenvalues().maxCoeff()) * Kp.transpose();
}

namespace {

MimoBenchmark mimo_common(std::string id, std::string description, StateSpace plant, StateSpace reference,
                          ReferenceInput input, std::vector<Polynomial> d, Polynomial f) {
  MimoBenchmark b;
  b.id = std::move(id);
  b.description = std::move(description);
  b.world.plant = std::move(plant);
  b.world.reference = std::move(reference);
  b.world.input = std::move(input);
  const TimeDomain dom = b.world.plant.domain;
  b.design.domain = dom;
  b.design.n = b.world.plant.states();
  b.design.nm = b.world.reference.states();
  b.design.M = b.world.plant.outputs();
  b.design.Mu = b.world.reference.inputs();
  b.design.xi = DiagonalInteractor(std::move(d), dom.tag);
  b.design.f = std::move(f);
  // Filter defaults used by the Ym and output-feedback variants.
  const double root = dom.is_discrete() ? 0.3 : -2.0;
  // nu = observability index of the plant; A(D)/Lambda has nu-1 blocks.
  int nu = 1;
  while (numerical_rank(observability_matrix(b.world.plant.A, b.world.plant.C.topRows(b.design.M)).topRows(
             nu * b.design.M)) < b.design.n)
    ++nu;
  b.design.lambda = Polynomial::power_of_linear(root, nu - 1);
  b.design.lambda_e = Polynomial::power_of_linear(root, static_cast<int>(b.design.nm - b.design.M));
  return b;
}

}  // namespace

MimoBenchmark mimo_dt_benchmark() {
  const auto dt = TimeDomain::discrete();
  StateSpace plant(rows({{1.1, 0.2, 0.0, 0.1}, {0.1, 0.2, 1.0, 0.0}, {0.2, -0.4, 0.6, 0.3}, {0.1, 0.2, 0.0, 0.4}}),
                   rows({{1.0, 0.4}, {0.0, 0.0}, {-0.3, 0.9}, {0.0, 0.0}}),
                   rows({{1, 0, 0, 0}, {0, 1, 0, 0}}), dt);
  StateSpace ref(rows({{0.5, 1.0, 0.0, 0.0}, {-0.2, 0.3, 0.1, 0.0}, {0.0, 0.0, 0.4, 1.0}, {0.1, 0.0, -0.3, 0.2}}),
                 rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.5, 1.0}}), rows({{1, 0, 0, 0}, {0, 0, 1, 0}}), dt);
  MimoBenchmark b = mimo_common("mimo_dt2x2", "unstable 4-state DT 2x2 plant, relative degrees (1,2), zero at 0.4",
                                std::move(plant), std::move(ref), dt_input(2),
                                {Polynomial::from_real_roots({0.3}), Polynomial::from_real_roots({0.4, 0.2})},
                                Polynomial::power_of_linear(0.2, 2));
  const Eigen::MatrixXd Kp = rows({{1.0, 0.4}, {-0.2, 0.94}});
  b.gains.Gamma = Eigen::MatrixXd::Identity(2, 2);
  b.gains.Sp = scaled_sp(Kp, 1.5);
  return b;
}

MimoBenchmark mimo_ct_benchmark() {
  const auto ct = TimeDomain::continuous(1e-3);
  StateSpace plant(rows({{0.5, 0.5, 0.0, 0.2}, {0.2, -1.0, 1.0, 0.0}, {-1.0, 0.5, -0.5, 0.3}, {1.0, 0.5, 0.0, -2.0}}),
                   rows({{1.0, 0.4}, {0.0, 0.0}, {-0.3, 0.9}, {0.0, 0.0}}),
                   rows({{1, 0, 0, 0}, {0, 1, 0, 0}}), ct);
  StateSpace ref(rows({{0.0, 1.0, 0.0, 0.0}, {-2.0, -3.0, 0.5, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.3, 0.0, -1.0, -2.0}}),
                 rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.5, 1.0}}), rows({{1, 0, 0, 0}, {0, 0, 1, 0}}), ct);
  MimoBenchmark b = mimo_common("mimo_ct2x2", "unstable 4-state CT 2x2 plant, relative degrees (1,2), zero at -2",
                                std::move(plant), std::move(ref), ct_input(2),
                                {Polynomial::from_real_roots({-2.0}), Polynomial::from_real_roots({-1.0, -2.0})},
                                Polynomial::power_of_linear(-1.0, 2));
  const Eigen::MatrixXd Kp = rows({{1.0, 0.4}, {-0.1, 0.98}});
  b.gains.Gamma = Eigen::MatrixXd::Identity(2, 2);
  b.gains.Sp = scaled_sp(Kp, 1.5);
  return b;
}

MimoBenchmark mimo_rd1_benchmark() {
  const auto ct = TimeDomain::continuous(1e-3);
  StateSpace plant(rows({{0.5, 0.3, 0.2}, {-0.4, -1.0, 0.5}, {1.0, -0.3, -1.5}}),
                   rows({{1.0, 0.3}, {-0.2, 1.2}, {0.0, 0.0}}), rows({{1, 0, 0}, {0, 1, 0}}), ct);
  StateSpace ref(rows({{-1.0, 0.5, 0.0}, {0.0, -2.0, 1.0}, {0.3, 0.0, -1.5}}),
                 rows({{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}), rows({{1, 0, 0}, {0, 1, 0}}), ct);
  MimoBenchmark b = mimo_common("mimo_rd1_ct", "unstable 3-state CT 2x2 plant, relative degrees (1,1), zero at -1.5",
                                std::move(plant), std::move(ref), ct_input(2),
                                {Polynomial::from_real_roots({-1.0}), Polynomial::from_real_roots({-2.0})},
                                Polynomial::power_of_linear(-1.0, 1));
  b.design.law = mimo::MimoLaw::Rd1Lyapunov;
  const Eigen::MatrixXd Kp = rows({{1.0, 0.3}, {-0.2, 1.2}});
  b.gains.Sp = 2.0 * Kp;  // M_s = K_p^{-1} S = 2 I
  b.gains.Q = Eigen::MatrixXd::Identity(2, 2);
  return b;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

RandomSisoProblem random_coprime_problem(std::mt19937_64& rng, int n) {
  if (n < 1) throw Error(ErrorCode::ValidationError, "plant order must be >= 1", "n");
  RandomSisoProblem p;
  for (;;) {
    const int nstar = 1 + static_cast<int>(uniform(rng, 0.0, static_cast<double>(n)));
    p.Z = poly_from_real_or_pair(rng, n - nstar, 0.8);
    p.P = poly_from_real_or_pair(rng, n, 1.3);
    p.pm = poly_from_real_or_pair(rng, nstar, 0.6);
    p.lambda = poly_from_real_or_pair(rng, n - 1, 0.6);
    p.kp = uniform(rng, 0.5, 2.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    if (min_root_gap(p.Z, p.P) > 0.05) return p;
  }
}

}  // namespace mrac::oracle
