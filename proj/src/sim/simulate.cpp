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

#include <cmath>
#include <limits>

#include "mrac/error.hpp"
#include "mrac/sim/closed_loop.hpp"

namespace mrac {

namespace {

TraceRow make_row(double t, const LoopSignals& s, const SimOptions& opts, const Eigen::MatrixXd* prev_theta) {
  TraceRow r;
  r.t = t;
  r.y = s.y;
  r.ym = s.ym;
  r.e = s.e;
  r.u = s.u;
  r.eps = s.eps;
  r.m = s.m.size() ? s.m.maxCoeff() : 1.0;
  r.V = opts.lyapunov ? opts.lyapunov(s) : std::numeric_limits<double>::quiet_NaN();
  r.theta_norm = s.theta.norm();
  r.psi_norm = s.psi.size() ? s.psi.norm() : 0.0;
  double acc = 0.0;
  if (s.m2.size() == 1) {
    acc = s.eps.squaredNorm() / s.m2(0);
  } else {
    for (Eigen::Index i = 0; i < s.eps.size(); ++i) acc += s.eps(i) * s.eps(i) / s.m2(i);
  }
  r.eps_norm_sq = acc;
  r.dtheta_sq = prev_theta ? (s.theta - *prev_theta).squaredNorm() : 0.0;
  return r;
}

}  // namespace

SimTrace simulate(const ClosedLoop& loop, Eigen::VectorXd X, const SimOptions& opts) {
  if (X.size() != loop.state_size())
    throw Error(ErrorCode::DimensionMismatch, "initial state has the wrong size for this closed loop");
  const TimeDomain dom = loop.domain();
  const double h = dom.step;
  SimTrace trace;
  trace.outputs = loop.outputs();
  trace.inputs = loop.inputs();
  trace.domain = dom;
  trace.rows.reserve(static_cast<std::size_t>(opts.steps));

  const Eigen::Index ns = X.size();
  LoopSignals s, stage;
  Eigen::VectorXd k1(ns), k2(ns), k3(ns), k4(ns), Xs(ns);
  Eigen::MatrixXd prev_theta;

  for (Eigen::Index k = 0; k < opts.steps; ++k) {
    const double t = static_cast<double>(k) * h;
    try {
      loop.evaluate(t, X, s);
      trace.rows.push_back(make_row(t, s, opts, k > 0 ? &prev_theta : nullptr));
      if (opts.observer) opts.observer(k, t, s);
      prev_theta = s.theta;
      if (k + 1 == opts.steps) break;
      if (dom.is_discrete()) {
        loop.advance(t, X, s, k1);
        X = k1;
      } else {
        loop.advance(t, X, s, k1);
        Xs = X + 0.5 * h * k1;
        loop.evaluate(t + 0.5 * h, Xs, stage);
        loop.advance(t + 0.5 * h, Xs, stage, k2);
        Xs = X + 0.5 * h * k2;
        loop.evaluate(t + 0.5 * h, Xs, stage);
        loop.advance(t + 0.5 * h, Xs, stage, k3);
        Xs = X + h * k3;
        loop.evaluate(t + h, Xs, stage);
        loop.advance(t + h, Xs, stage, k4);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SingularityGuard) throw;
      trace.guard_events.push_back({k, t, err.what()});
      trace.aborted = true;
      break;
    }
  }
  return trace;
}

}  // namespace mrac
