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

#include "mrac/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrac/error.hpp"

namespace mrac::harness {

MetricsReport compute_metrics(const SimTrace& trace, const MetricsOptions& opts) {
  MetricsReport r;
  const auto n = static_cast<long long>(trace.rows.size());
  r.samples = n;
  r.step = trace.domain.step;
  r.tail_fraction = opts.tail_fraction;
  r.tolerance = opts.tolerance;
  r.guard_aborted = trace.aborted;
  r.guard_events = trace.guard_events;
  if (n == 0) return r;

  const double h = trace.domain.is_discrete() ? 1.0 : trace.domain.step;
  const long long window = std::max(1LL, static_cast<long long>(std::ceil(opts.tail_fraction * static_cast<double>(n))));
  const long long tail_start = n - window;

  double se = 0.0;
  for (long long k = 0; k < n; ++k) {
    const TraceRow& row = trace.rows[static_cast<std::size_t>(k)];
    r.sup_theta_norm = std::max(r.sup_theta_norm, row.theta_norm);
    r.sup_psi_norm = std::max(r.sup_psi_norm, row.psi_norm);
    r.l2_total += row.eps_norm_sq * h;
    r.dtheta_total += row.dtheta_sq;
    if (k >= tail_start) {
      se += row.e.squaredNorm();
      r.l2_tail += row.eps_norm_sq * h;
      r.dtheta_tail += row.dtheta_sq;
    }
  }
  r.tail_rms_e = std::sqrt(se / static_cast<double>(window));

  if (opts.rule != LyapunovRule::None && trace.has_lyapunov()) {
    r.lyapunov_checked = true;
    r.max_lyapunov_rate = -std::numeric_limits<double>::infinity();
    const double slack = opts.slack > 0.0 ? opts.slack : (opts.rule == LyapunovRule::Increment ? 1e-12 : 1e-6);
    for (long long k = 1; k < n; ++k) {
      const double v0 = trace.rows[static_cast<std::size_t>(k - 1)].V;
      const double v1 = trace.rows[static_cast<std::size_t>(k)].V;
      if (opts.rule == LyapunovRule::Increment) {
        const double dv = v1 - v0;
        r.max_lyapunov_rate = std::max(r.max_lyapunov_rate, dv);
        if (!(dv <= slack)) ++r.lyapunov_violations;
      } else {
        const double rate = (v1 - v0) / h;
        r.max_lyapunov_rate = std::max(r.max_lyapunov_rate, rate);
        if (!(rate <= slack * std::max(v0, 1.0))) ++r.lyapunov_violations;
      }
    }
    if (n < 2) r.max_lyapunov_rate = 0.0;
  }
  r.converged = !trace.aborted && std::isfinite(r.tail_rms_e) && r.tail_rms_e < opts.tolerance;
  return r;
}

namespace {

// JSON has no NaN or infinity; they travel as strings.
nlohmann::json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("report is missing ") + key, key);
  const auto& v = doc[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(ErrorCode::ParseError, std::string("report field is not a number: ") + key, key);
}

template <class T>
T get(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("report is missing ") + key, key);
  try {
    return doc[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("report field has the wrong type: ") + key, key);
  }
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& g : r.guard_events) {
    events.push_back({{"step", static_cast<long long>(g.step)}, {"t", num(g.t)}, {"message", g.message}});
  }
  return {{"name", r.name},
          {"module", r.module},
          {"mode", r.mode},
          {"test_mode", r.test_mode},
          {"samples", r.samples},
          {"step", num(r.step)},
          {"tail_fraction", num(r.tail_fraction)},
          {"tolerance", num(r.tolerance)},
          {"tail_rms_e", num(r.tail_rms_e)},
          {"sup_theta_norm", num(r.sup_theta_norm)},
          {"sup_psi_norm", num(r.sup_psi_norm)},
          {"lyapunov_checked", r.lyapunov_checked},
          {"lyapunov_violations", r.lyapunov_violations},
          {"max_lyapunov_rate", num(r.max_lyapunov_rate)},
          {"l2_total", num(r.l2_total)},
          {"l2_tail", num(r.l2_tail)},
          {"dtheta_total", num(r.dtheta_total)},
          {"dtheta_tail", num(r.dtheta_tail)},
          {"converged", r.converged},
          {"guard_aborted", r.guard_aborted},
          {"guard_events", events}};
}

MetricsReport report_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "report must be an object", "report");
  MetricsReport r;
  r.name = get<std::string>(doc, "name");
  r.module = get<std::string>(doc, "module");
  r.mode = get<std::string>(doc, "mode");
  r.test_mode = get<bool>(doc, "test_mode");
  r.samples = get<long long>(doc, "samples");
  r.step = get_num(doc, "step");
  r.tail_fraction = get_num(doc, "tail_fraction");
  r.tolerance = get_num(doc, "tolerance");
  r.tail_rms_e = get_num(doc, "tail_rms_e");
  r.sup_theta_norm = get_num(doc, "sup_theta_norm");
  r.sup_psi_norm = get_num(doc, "sup_psi_norm");
  r.lyapunov_checked = get<bool>(doc, "lyapunov_checked");
  r.lyapunov_violations = get<long long>(doc, "lyapunov_violations");
  r.max_lyapunov_rate = get_num(doc, "max_lyapunov_rate");
  r.l2_total = get_num(doc, "l2_total");
  r.l2_tail = get_num(doc, "l2_tail");
  r.dtheta_total = get_num(doc, "dtheta_total");
  r.dtheta_tail = get_num(doc, "dtheta_tail");
  r.converged = get<bool>(doc, "converged");
  r.guard_aborted = get<bool>(doc, "guard_aborted");
  const auto& ev = doc.contains("guard_events") ? doc["guard_events"] : nlohmann::json::array();
  for (const auto& e : ev) {
    r.guard_events.push_back({get<long long>(e, "step"), get_num(e, "t"), get<std::string>(e, "message")});
  }
  return r;
}

}  // namespace mrac::harness
