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

#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrac/lti/time_domain.hpp"

namespace mrac {

/**
 * @brief Real polynomial in D with ascending coefficients.
 *
 * Trailing exact zeros are trimmed, so `degree()` is the index of the last
 * nonzero coefficient. The zero polynomial has degree 0 and coefficient 0.
 */
class Polynomial {
 public:
  Polynomial() : c_(Eigen::VectorXd::Ones(1)) {}
  explicit Polynomial(Eigen::VectorXd ascending);
  Polynomial(std::initializer_list<double> ascending);
  explicit Polynomial(const std::vector<double>& ascending);

  static Polynomial constant(double value);
  static Polynomial monomial(int degree);
  /// Monic polynomial with the given roots; complex roots must come in conjugate pairs.
  static Polynomial from_roots(const std::vector<std::complex<double>>& roots);
  static Polynomial from_real_roots(const std::vector<double>& roots);
  /// (D - root)^power
  static Polynomial power_of_linear(double root, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int i) const { return (i >= 0 && i <= degree()) ? c_(i) : 0.0; }
  double leading() const { return c_(c_.size() - 1); }
  const Eigen::VectorXd& coeffs() const { return c_; }
  bool is_zero() const { return c_.size() == 1 && c_(0) == 0.0; }
  bool is_monic() const { return leading() == 1.0; }
  Polynomial monic() const;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;
  /// p(A) by Horner's rule.
  Eigen::MatrixXd operator()(const Eigen::MatrixXd& A) const;

  std::vector<std::complex<double>> roots() const;
  /// CT: all roots with negative real part. DT: all roots strictly inside the unit circle.
  bool is_stable(Domain domain) const;
  double max_root_modulus() const;
  double max_root_real_part() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  friend Polynomial operator*(double s, const Polynomial& p) { return p * s; }

  std::string to_string(char var = 'D') const;

 private:
  void trim();
  Eigen::VectorXd c_;
};

}  // namespace mrac
