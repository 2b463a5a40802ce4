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

#include <ostream>
#include <string>

#include "mrac/harness/metrics.hpp"
#include "mrac/sim/trace.hpp"

namespace mrac::harness {

/// Shortest decimal text that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

/// Header plus one row per sample: t, y_i, ym_i, e_i, u_i, m, eps_i, V, theta_norm.
void write_trace_csv(const SimTrace& trace, std::ostream& out);

/// Plot-ready long form: t,series,value with series named as the trace columns (except t).
void write_long_csv(const SimTrace& trace, std::ostream& out);

struct OutputPaths {
  std::string trace;
  std::string long_form;
  std::string report;
};

/// Writes trace.csv, trace_long.csv and report.json into outdir (created if missing). Throws IoError with the path.
OutputPaths emit_outputs(const SimTrace& trace, const MetricsReport& report, const std::string& outdir);

}  // namespace mrac::harness
