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

#include "mrac/lti/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mrac/error.hpp"

namespace mrac {

Polynomial::Polynomial(Eigen::VectorXd ascending) : c_(std::move(ascending)) {
  if (c_.size() == 0) c_ = Eigen::VectorXd::Zero(1);
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> ascending)
    : Polynomial(std::vector<double>(ascending)) {}

Polynomial::Polynomial(const std::vector<double>& ascending)
    : Polynomial(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
          ascending.data(), static_cast<Eigen::Index>(ascending.size())))) {}

void Polynomial::trim() {
  Eigen::Index n = c_.size();
  while (n > 1 && c_(n - 1) == 0.0) --n;
  c_.conservativeResize(n);
}

Polynomial Polynomial::constant(double value) { return Polynomial{value}; }

Polynomial Polynomial::monomial(int degree) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(degree + 1);
  c(degree) = 1.0;
  return Polynomial(c);
}

Polynomial Polynomial::from_roots(const std::vector<std::complex<double>>& roots) {
  // Multiply out in complex arithmetic, then drop the (roundoff) imaginary part.
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) out(static_cast<Eigen::Index>(i)) = c[i].real();
  return Polynomial(out);
}

Polynomial Polynomial::from_real_roots(const std::vector<double>& roots) {
  Polynomial p;
  for (double r : roots) p = p * Polynomial{-r, 1.0};
  return p;
}

Polynomial Polynomial::power_of_linear(double root, int power) {
  Polynomial p;
  for (int i = 0; i < power; ++i) p = p * Polynomial{-root, 1.0};
  return p;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw Error(ErrorCode::ValidationError, "zero polynomial has no monic form");
  return Polynomial(Eigen::VectorXd(c_ / leading()));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * x + c_(i);
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * z + c_(i);
  return acc;
}

Eigen::MatrixXd Polynomial::operator()(const Eigen::MatrixXd& A) const {
  if (A.rows() != A.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix polynomial needs a square argument");
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = c_.size() - 1; i >= 0; --i) {
    acc = (acc * A).eval();
    acc.diagonal().array() += c_(i);
  }
  return acc;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c_(i) / leading();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return r;
}

double Polynomial::max_root_modulus() const {
  double m = 0.0;
  for (const auto& r : roots()) m = std::max(m, std::abs(r));
  return m;
}

double Polynomial::max_root_real_part() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots()) m = std::max(m, r.real());
  return m;
}

bool Polynomial::is_stable(Domain domain) const {
  if (is_zero()) return false;
  if (degree() == 0) return true;
  return domain == Domain::Discrete ? max_root_modulus() < 1.0 : max_root_real_part() < 0.0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  const Eigen::Index n = std::max(c_.size(), o.c_.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c.head(c_.size()) += c_;
  c.head(o.c_.size()) += o.c_;
  return Polynomial(c);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(c_.size() + o.c_.size() - 1);
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    for (Eigen::Index j = 0; j < o.c_.size(); ++j) c(i + j) += c_(i) * o.c_(j);
  return Polynomial(c);
}

Polynomial Polynomial::operator*(double s) const { return Polynomial(Eigen::VectorXd(c_ * s)); }

std::string Polynomial::to_string(char var) const {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (Eigen::Index i = c_.size() - 1; i >= 0; --i) {
    const double v = c_(i);
    if (v == 0.0 && c_.size() > 1) continue;
    os << (first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + "));
    const double a = std::abs(v);
    if (i == 0 || a != 1.0) os << a;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

}  // namespace mrac
