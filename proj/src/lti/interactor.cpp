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

#include "mrac/lti/interactor.hpp"

#include <algorithm>

#include "mrac/error.hpp"

namespace mrac {

DiagonalInteractor::DiagonalInteractor(std::vector<Polynomial> rows, Domain domain) : rows_(std::move(rows)) {
  for (const auto& d : rows_) {
    if (!d.is_monic()) throw Error(ErrorCode::ValidationError, "interactor rows must be monic", "interactor");
    if (d.degree() < 1) throw Error(ErrorCode::ValidationError, "interactor rows need degree >= 1", "interactor");
    if (!d.is_stable(domain))
      throw Error(ErrorCode::ValidationError, "interactor row " + d.to_string() + " is not stable", "interactor");
  }
}

int DiagonalInteractor::max_degree() const {
  int q = 0;
  for (const auto& d : rows_) q = std::max(q, d.degree());
  return q;
}

std::vector<int> DiagonalInteractor::degrees() const {
  std::vector<int> out;
  for (const auto& d : rows_) out.push_back(d.degree());
  return out;
}

RationalFilter DiagonalInteractor::over(const Polynomial& f, TimeDomain domain) const {
  if (f.degree() < max_degree())
    throw Error(ErrorCode::ValidationError, "f must have degree >= every interactor row", "f");
  return RationalFilter(rows_, f, domain);
}

}  // namespace mrac
