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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mrac/error.hpp"
#include "mrac/harness/metrics.hpp"
#include "mrac/harness/output.hpp"
#include "mrac/harness/runner.hpp"
#include "mrac/harness/scenario.hpp"

namespace mrac::harness {
namespace {

using nlohmann::json;

json minimal_siso() {
  return json{{"schema_version", 1}, {"name", "s"}, {"module", "siso"}, {"domain", "dt"}, {"benchmark", "siso_dt2"}};
}

// Runs f and returns the error it raised; fails the test when nothing is thrown.
Error caught(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::IoError, "none");
}

std::string csv_of(const SimTrace& tr) {
  std::ostringstream os;
  write_trace_csv(tr, os);
  return os.str();
}

TEST(Scenario, MinimalSisoGetsDefaults) {
  const Scenario sc = parse_scenario(minimal_siso());
  EXPECT_EQ(sc.module, Module::Siso);
  EXPECT_EQ(sc.domain, Domain::Discrete);
  EXPECT_EQ(sc.mode, Mode::Adaptive);
  EXPECT_FALSE(sc.test_mode);
  EXPECT_DOUBLE_EQ(sc.effective_step(), 1.0);
  EXPECT_DOUBLE_EQ(sc.effective_tolerance(), 1e-3);
  EXPECT_DOUBLE_EQ(sc.effective_tail_fraction(), 0.1);
  const Prepared p = prepare(sc);
  ASSERT_TRUE(p.siso.has_value());
  EXPECT_EQ(p.siso->steps, 5000);
  EXPECT_FALSE(p.oracle_attached);
}

TEST(Scenario, UnstablePmNamesField) {
  json doc = minimal_siso();
  doc["design"] = {{"pm", {0.3, -1.8, 1.0}}};  // roots 1.5 and 0.2
  const Error e = caught([&] { prepare(parse_scenario(doc)); });
  EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  EXPECT_EQ(e.field(), "pm");
}

TEST(Scenario, OversizedGammaNamesField) {
  json doc = minimal_siso();
  doc["gains"] = {{"Gamma", 2.5}};  // kp_bound 1 allows Gamma < 2
  const Error e = caught([&] { prepare(parse_scenario(doc)); });
  EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  EXPECT_EQ(e.field(), "Gamma");
}

TEST(Scenario, UnknownFieldsAreRejectedWithTheirPath) {
  json doc = minimal_siso();
  doc["design"] = {{"structure", "SF_Xm"}, {"polez", 1}};
  const Error e = caught([&] { parse_scenario(doc); });
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(e.what()).find("polez"), std::string::npos);
}

TEST(Scenario, MissingAndMistypedFields) {
  json doc = minimal_siso();
  doc.erase("name");
  EXPECT_EQ(caught([&] { parse_scenario(doc); }).field(), "name");
  doc = minimal_siso();
  doc["horizon"] = "long";
  EXPECT_EQ(caught([&] { parse_scenario(doc); }).code(), ErrorCode::ParseError);
  doc = minimal_siso();
  doc["schema_version"] = 99;
  EXPECT_EQ(caught([&] { parse_scenario(doc); }).code(), ErrorCode::ParseError);
}

TEST(Scenario, MalformedFileIsParseError) {
  const auto path = std::filesystem::temp_directory_path() / "mrac_malformed.json";
  std::ofstream(path) << "{\"name\": ";
  EXPECT_EQ(caught([&] { load_scenario(path.string()); }).code(), ErrorCode::ParseError);
  EXPECT_EQ(caught([&] { load_scenario("/nonexistent/nowhere.json"); }).code(), ErrorCode::IoError);
}

TEST(Scenario, OracleOptionsNeedTestMode) {
  json doc = minimal_siso();
  doc["initial"] = {{"theta_scale", 0.9}};
  EXPECT_EQ(caught([&] { prepare(parse_scenario(doc)); }).field(), "initial.theta_scale");
  doc = minimal_siso();
  doc["mode"] = "nominal";
  EXPECT_EQ(caught([&] { prepare(parse_scenario(doc)); }).field(), "mode");
  doc["test_mode"] = true;
  EXPECT_TRUE(prepare(parse_scenario(doc)).oracle_attached);
}

TEST(Scenario, BenchmarkListIsComplete) {
  const auto ids = benchmark_ids();
  for (const char* id : {"siso_scalar", "siso_dt2", "siso_dt3", "mimo_dt2x2", "mimo_ct2x2", "mimo_rd1_ct", "fl_leader_follower"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
}

TEST(Scenario, GoldenFilesParseAndValidate) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(MRAC_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    EXPECT_NO_THROW(prepare(load_scenario(entry.path().string()))) << entry.path();
  }
  EXPECT_GE(count, 5);
}

TEST(Runner, RepeatedRunsAreByteIdentical) {
  json doc = minimal_siso();
  doc["horizon"] = 800;
  doc["seed"] = 42;
  doc["initial"] = {{"x0_random", 0.5}};
  const Scenario sc = parse_scenario(doc);
  const RunResult a = run_experiment(sc), b = run_experiment(sc);
  EXPECT_EQ(csv_of(a.trace), csv_of(b.trace));
  EXPECT_EQ(report_to_json(a.report).dump(), report_to_json(b.report).dump());
  doc["seed"] = 43;
  EXPECT_NE(csv_of(run_experiment(parse_scenario(doc)).trace), csv_of(a.trace));
}

TEST(Runner, NominalBenchmarkConvergesWithoutViolations) {
  json doc = minimal_siso();
  doc["benchmark"] = "siso_dt3";
  doc["mode"] = "nominal";
  doc["test_mode"] = true;
  doc["horizon"] = 1000;
  const RunResult r = run_experiment(parse_scenario(doc));
  EXPECT_TRUE(r.report.converged);
  EXPECT_TRUE(r.report.lyapunov_checked);
  EXPECT_EQ(r.report.lyapunov_violations, 0);
  EXPECT_LT(r.report.tail_rms_e, 1e-12);
}

TEST(Runner, BlindRunReportsNoLyapunovCheck) {
  json doc = minimal_siso();
  doc["horizon"] = 200;
  const RunResult r = run_experiment(parse_scenario(doc));
  EXPECT_FALSE(r.report.lyapunov_checked);
  EXPECT_EQ(r.report.lyapunov_violations, 0);
  EXPECT_TRUE(std::isnan(r.trace.rows.back().V));
}

TEST(Runner, GuardAbortKeepsPartialTrace) {
  const json doc{{"schema_version", 1}, {"name", "g"},         {"module", "fl"},
                 {"domain", "ct"},      {"benchmark", "fl_leader_follower"}, {"horizon", 1},
                 {"test_mode", true},   {"initial", {{"theta_scale", 0.0}}}};
  const RunResult r = run_experiment(parse_scenario(doc));
  EXPECT_TRUE(r.report.guard_aborted);
  EXPECT_FALSE(r.report.converged);
  ASSERT_EQ(r.report.guard_events.size(), 1u);
}

TEST(Output, EmptyTraceIsHeaderOnly) {
  SimTrace tr;
  tr.outputs = tr.inputs = 1;
  EXPECT_EQ(csv_of(tr), "t,y_1,ym_1,e_1,u_1,m,eps_1,V,theta_norm\n");
}

TEST(Output, GoldenHeaderForTwoOutputs) {
  SimTrace tr;
  tr.outputs = tr.inputs = 2;
  EXPECT_EQ(csv_of(tr), "t,y_1,y_2,ym_1,ym_2,e_1,e_2,u_1,u_2,m,eps_1,eps_2,V,theta_norm\n");
}

TEST(Output, DoublesRoundTripAndSpecialValues) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-HUGE_VAL), "-inf");
}

TEST(Output, LongFormHasOneRowPerSeriesSample) {
  json doc = minimal_siso();
  doc["horizon"] = 3;
  const RunResult r = run_experiment(parse_scenario(doc));
  std::ostringstream os;
  write_long_csv(r.trace, os);
  const std::string text = os.str();
  EXPECT_EQ(text.rfind("t,series,value\n", 0), 0u);
  const auto lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, 1 + 3 * 8);  // 8 series besides t for one output
}

TEST(Output, ReportRoundTrips) {
  json doc = minimal_siso();
  doc["horizon"] = 300;
  doc["test_mode"] = true;
  doc["initial"] = {{"theta_scale", 0.9}};
  const RunResult r = run_experiment(parse_scenario(doc));
  const json once = report_to_json(r.report);
  const MetricsReport back = report_from_json(json::parse(once.dump()));
  EXPECT_EQ(report_to_json(back).dump(), once.dump());
  EXPECT_EQ(back.samples, 300);
  EXPECT_EQ(caught([] { report_from_json(json{{"name", 3}}); }).code(), ErrorCode::ParseError);
}

TEST(Output, EmitWritesAllFilesAndReportsBadPaths) {
  json doc = minimal_siso();
  doc["horizon"] = 10;
  const RunResult r = run_experiment(parse_scenario(doc));
  const auto dir = std::filesystem::temp_directory_path() / "mrac_emit_test";
  std::filesystem::remove_all(dir);
  const OutputPaths p = emit_outputs(r.trace, r.report, dir.string());
  for (const auto& f : {p.trace, p.long_form, p.report}) EXPECT_TRUE(std::filesystem::exists(f)) << f;
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  const Error e = caught([&] { emit_outputs(r.trace, r.report, (blocker / "sub").string()); });
  EXPECT_EQ(e.code(), ErrorCode::IoError);
  EXPECT_NE(std::string(e.what()).find("file"), std::string::npos);
}

TEST(Metrics, ConvergenceAndViolationsFollowTheDefinitions) {
  SimTrace tr;
  tr.outputs = tr.inputs = 1;
  for (int k = 0; k < 10; ++k) {
    TraceRow r;
    r.t = k;
    r.y = r.ym = r.u = r.eps = Eigen::VectorXd::Zero(1);
    r.e = Eigen::VectorXd::Constant(1, k < 8 ? 1.0 : 0.5);
    r.V = k == 4 ? 2.0 : 1.0;  // one rise at k = 4
    tr.rows.push_back(r);
  }
  MetricsOptions o;
  o.tail_fraction = 0.2;
  o.tolerance = 0.6;
  o.rule = LyapunovRule::Increment;
  const MetricsReport m = compute_metrics(tr, o);
  EXPECT_DOUBLE_EQ(m.tail_rms_e, 0.5);
  EXPECT_TRUE(m.converged);
  EXPECT_EQ(m.lyapunov_violations, 1);
  o.tolerance = 0.5;
  EXPECT_FALSE(compute_metrics(tr, o).converged);
}

}  // namespace
}  // namespace mrac::harness
