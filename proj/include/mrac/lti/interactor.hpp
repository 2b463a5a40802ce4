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

#include <vector>

#include "mrac/lti/polynomial.hpp"
#include "mrac/lti/rational_filter.hpp"

namespace mrac {

/**
 * @brief Diagonal modified interactor diag{d_1(D), ..., d_M(D)}.
 *
 * Rows are monic and stable; deg d_i is the relative degree of output i.
 */
class DiagonalInteractor {
 public:
  DiagonalInteractor() = default;
  DiagonalInteractor(std::vector<Polynomial> rows, Domain domain);

  Eigen::Index size() const { return static_cast<Eigen::Index>(rows_.size()); }
  const Polynomial& row(Eigen::Index i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<Polynomial>& rows() const { return rows_; }
  int degree(Eigen::Index i) const { return row(i).degree(); }
  int max_degree() const;
  std::vector<int> degrees() const;

  /// diag{d_i(D) / f(D)}, the filter producing the filtered tracking error.
  RationalFilter over(const Polynomial& f, TimeDomain domain) const;

 private:
  std::vector<Polynomial> rows_;
};

}  // namespace mrac
