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

#include "mrac/harness/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "mrac/error.hpp"

namespace mrac::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<double> row_values(const SimTrace& tr, const TraceRow& r) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(4 * tr.outputs + tr.inputs + 4));
  v.push_back(r.t);
  for (const Eigen::VectorXd* vec : {&r.y, &r.ym, &r.e, &r.u})
    for (Eigen::Index i = 0; i < vec->size(); ++i) v.push_back((*vec)(i));
  v.push_back(r.m);
  for (Eigen::Index i = 0; i < tr.outputs; ++i) v.push_back(i < r.eps.size() ? r.eps(i) : 0.0);
  v.push_back(r.V);
  v.push_back(r.theta_norm);
  return v;
}

}  // namespace

void write_trace_csv(const SimTrace& trace, std::ostream& out) {
  const auto cols = trace.column_names();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : trace.rows) {
    const auto v = row_values(trace, r);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_double(v[i]);
    out << '\n';
  }
}

void write_long_csv(const SimTrace& trace, std::ostream& out) {
  const auto cols = trace.column_names();
  out << "t,series,value\n";
  for (const auto& r : trace.rows) {
    const auto v = row_values(trace, r);
    const std::string t = format_double(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) out << t << ',' << cols[i] << ',' << format_double(v[i]) << '\n';
  }
}

OutputPaths emit_outputs(const SimTrace& trace, const MetricsReport& report, const std::string& outdir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + outdir + ": " + ec.message(), "out");
  OutputPaths p{(fs::path(outdir) / "trace.csv").string(), (fs::path(outdir) / "trace_long.csv").string(),
                (fs::path(outdir) / "report.json").string()};
  auto open = [](const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path, "out");
    return f;
  };
  {
    auto f = open(p.trace);
    write_trace_csv(trace, f);
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + p.trace, "out");
  }
  {
    auto f = open(p.long_form);
    write_long_csv(trace, f);
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + p.long_form, "out");
  }
  {
    auto f = open(p.report);
    f << report_to_json(report).dump(2) << '\n';
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + p.report, "out");
  }
  return p;
}

}  // namespace mrac::harness
