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

#include "mrac/harness/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mrac/error.hpp"

namespace mrac::harness {

using nlohmann::json;

std::string to_string(Module m) {
  switch (m) {
    case Module::Siso: return "siso";
    case Module::Mimo: return "mimo";
    case Module::Fl: return "fl";
  }
  return "?";
}

std::string to_string(Mode m) { return m == Mode::Nominal ? "nominal" : "adaptive"; }

std::vector<std::string> benchmark_ids() {
  return {"siso_scalar", "siso_dt2", "siso_dt3", "mimo_dt2x2", "mimo_ct2x2", "mimo_rd1_ct", "fl_leader_follower"};
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what, field);
}

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) parse_fail(path.empty() ? "<root>" : path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) parse_fail(join(path, it.key()), "unknown field");
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) parse_fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_fail(field, "expected a finite number");
  return d;
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) parse_fail(field, "expected a string");
  return v.get<std::string>();
}

Eigen::VectorXd vector(const json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = number(v[i], field);
  return out;
}

Eigen::MatrixXd matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty() || !v[0].is_array()) parse_fail(field, "expected an array of rows");
  const std::size_t cols = v[0].size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) parse_fail(field, "rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(v[i][j], field);
  }
  return out;
}

Polynomial polynomial(const json& v, const std::string& field) {
  const Eigen::VectorXd c = vector(v, field);
  if (c.size() == 0) parse_fail(field, "polynomial needs at least one coefficient");
  if (c(c.size() - 1) == 0.0) parse_fail(field, "leading coefficient must be nonzero");
  return Polynomial(c);
}

StateSpace system(const json& v, const std::string& path, Domain domain, double step) {
  only_keys(v, path, {"A", "B", "C"});
  for (const char* k : {"A", "B", "C"})
    if (!v.contains(k)) parse_fail(join(path, k), "missing required field");
  const TimeDomain td = domain == Domain::Discrete ? TimeDomain::discrete() : TimeDomain::continuous(step);
  try {
    return StateSpace(matrix(v["A"], join(path, "A")), matrix(v["B"], join(path, "B")), matrix(v["C"], join(path, "C")),
                      td);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ValidationError, e.what(), path);
  }
}

ReferenceInput input(const json& v, const std::string& path) {
  only_keys(v, path, {"channels", "bias"});
  if (!v.contains("channels") || !v["channels"].is_array() || v["channels"].empty())
    parse_fail(join(path, "channels"), "expected a non-empty array of sinusoid lists");
  std::vector<std::vector<Sinusoid>> ch;
  const json& chans = v["channels"];
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const std::string cp = join(path, "channels[" + std::to_string(c) + "]");
    if (!chans[c].is_array()) parse_fail(cp, "expected an array of sinusoids");
    std::vector<Sinusoid> list;
    for (std::size_t k = 0; k < chans[c].size(); ++k) {
      const std::string sp = cp + "[" + std::to_string(k) + "]";
      const json& s = chans[c][k];
      only_keys(s, sp, {"amplitude", "frequency", "phase"});
      Sinusoid sn;
      if (s.contains("amplitude")) sn.amplitude = number(s["amplitude"], join(sp, "amplitude"));
      if (s.contains("frequency")) sn.frequency = number(s["frequency"], join(sp, "frequency"));
      if (s.contains("phase")) sn.phase = number(s["phase"], join(sp, "phase"));
      list.push_back(sn);
    }
    ch.push_back(std::move(list));
  }
  Eigen::VectorXd bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ch.size()));
  if (v.contains("bias")) {
    bias = vector(v["bias"], join(path, "bias"));
    if (bias.size() != static_cast<Eigen::Index>(ch.size()))
      parse_fail(join(path, "bias"), "one bias entry per channel required");
  }
  return ReferenceInput(std::move(ch), std::move(bias));
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  only_keys(doc, "", {"schema_version", "name", "module", "domain", "benchmark", "plant", "reference", "design",
                      "gains", "input", "horizon", "step", "seed", "mode", "test_mode", "initial", "tolerance",
                      "tail_fraction"});
  Scenario sc;
  if (!doc.contains("schema_version")) parse_fail("schema_version", "missing required field");
  if (!doc["schema_version"].is_number_integer()) parse_fail("schema_version", "expected an integer");
  sc.schema_version = doc["schema_version"].get<int>();
  if (sc.schema_version != kSchemaVersion)
    parse_fail("schema_version", "unsupported version " + std::to_string(sc.schema_version));

  if (!doc.contains("name")) parse_fail("name", "missing required field");
  sc.name = text(doc["name"], "name");

  if (!doc.contains("module")) parse_fail("module", "missing required field");
  const std::string mod = text(doc["module"], "module");
  if (mod == "siso") sc.module = Module::Siso;
  else if (mod == "mimo") sc.module = Module::Mimo;
  else if (mod == "fl") sc.module = Module::Fl;
  else parse_fail("module", "expected siso, mimo or fl");

  sc.domain = sc.module == Module::Fl ? Domain::Continuous : Domain::Discrete;
  if (doc.contains("domain")) {
    const std::string d = text(doc["domain"], "domain");
    if (d == "dt") sc.domain = Domain::Discrete;
    else if (d == "ct") sc.domain = Domain::Continuous;
    else parse_fail("domain", "expected dt or ct");
  }
  if (doc.contains("step")) sc.step = number(doc["step"], "step");
  if (doc.contains("benchmark")) sc.benchmark = text(doc["benchmark"], "benchmark");
  const double step = sc.step > 0.0 ? sc.step : 1e-3;
  if (doc.contains("plant")) sc.plant = system(doc["plant"], "plant", sc.domain, step);
  if (doc.contains("reference")) sc.reference = system(doc["reference"], "reference", sc.domain, step);

  if (doc.contains("design")) {
    const json& d = doc["design"];
    only_keys(d, "design", {"structure", "law", "pm", "lambda", "lambda_e", "f", "interactor", "sign_kp", "kp_bound"});
    if (d.contains("structure")) {
      try {
        sc.structure = parse_structure(text(d["structure"], "design.structure"));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        parse_fail("design.structure", "expected SF_Xm, SF_Ym, OF_Xm or OF_Ym");
      }
    }
    if (d.contains("law")) {
      sc.law = text(d["law"], "design.law");
      if (sc.law != "gradient" && sc.law != "rd1") parse_fail("design.law", "expected gradient or rd1");
    }
    if (d.contains("pm")) sc.pm = polynomial(d["pm"], "pm");
    if (d.contains("lambda")) sc.lambda = polynomial(d["lambda"], "lambda");
    if (d.contains("lambda_e")) sc.lambda_e = polynomial(d["lambda_e"], "lambda_e");
    if (d.contains("f")) sc.f = polynomial(d["f"], "f");
    if (d.contains("interactor")) {
      if (!d["interactor"].is_array()) parse_fail("interactor", "expected an array of polynomials");
      for (const auto& row : d["interactor"]) sc.interactor.push_back(polynomial(row, "interactor"));
    }
    if (d.contains("sign_kp")) {
      if (!d["sign_kp"].is_number_integer()) parse_fail("sign_kp", "expected +1 or -1");
      sc.sign_kp = d["sign_kp"].get<int>();
    }
    if (d.contains("kp_bound")) sc.kp_bound = number(d["kp_bound"], "kp_bound");
  }

  if (doc.contains("gains")) {
    const json& g = doc["gains"];
    only_keys(g, "gains", {"Gamma", "gamma", "Sp", "Q", "guard"});
    if (g.contains("Gamma")) {
      if (g["Gamma"].is_number()) {
        sc.Gamma = Eigen::MatrixXd::Constant(1, 1, number(g["Gamma"], "Gamma"));
        sc.Gamma_scalar = true;
      } else {
        sc.Gamma = matrix(g["Gamma"], "Gamma");
      }
    }
    if (g.contains("gamma")) sc.gamma = number(g["gamma"], "gamma");
    if (g.contains("Sp")) sc.Sp = matrix(g["Sp"], "Sp");
    if (g.contains("Q")) sc.Q = matrix(g["Q"], "Q");
    if (g.contains("guard")) sc.guard = number(g["guard"], "guard");
  }

  if (doc.contains("input")) sc.input = input(doc["input"], "input");
  if (doc.contains("horizon")) sc.horizon = number(doc["horizon"], "horizon");
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
      parse_fail("seed", "expected a non-negative integer");
    sc.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("mode")) {
    const std::string m = text(doc["mode"], "mode");
    if (m == "nominal") sc.mode = Mode::Nominal;
    else if (m == "adaptive") sc.mode = Mode::Adaptive;
    else parse_fail("mode", "expected nominal or adaptive");
  }
  if (doc.contains("test_mode")) {
    if (!doc["test_mode"].is_boolean()) parse_fail("test_mode", "expected true or false");
    sc.test_mode = doc["test_mode"].get<bool>();
  }
  if (doc.contains("initial")) {
    const json& in = doc["initial"];
    only_keys(in, "initial", {"theta_scale", "theta0", "rho0", "psi0", "x0", "xm0", "x0_random"});
    if (in.contains("theta_scale")) sc.theta_scale = number(in["theta_scale"], "initial.theta_scale");
    if (in.contains("theta0")) {
      sc.theta0 = in["theta0"].is_array() && !in["theta0"].empty() && in["theta0"][0].is_array()
                      ? matrix(in["theta0"], "initial.theta0")
                      : Eigen::MatrixXd(vector(in["theta0"], "initial.theta0"));
    }
    if (in.contains("rho0")) sc.rho0 = number(in["rho0"], "initial.rho0");
    if (in.contains("psi0")) sc.psi0 = matrix(in["psi0"], "initial.psi0");
    if (in.contains("x0")) sc.x0 = vector(in["x0"], "initial.x0");
    if (in.contains("xm0")) sc.xm0 = vector(in["xm0"], "initial.xm0");
    if (in.contains("x0_random")) sc.x0_random = number(in["x0_random"], "initial.x0_random");
  }
  if (doc.contains("tolerance")) sc.tolerance = number(doc["tolerance"], "tolerance");
  if (doc.contains("tail_fraction")) sc.tail_fraction = number(doc["tail_fraction"], "tail_fraction");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open scenario file " + path, "scenario");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": malformed document: " + e.what(), "scenario");
  }
  return parse_scenario(doc);
}

double Scenario::effective_step() const {
  if (domain == Domain::Discrete) return 1.0;
  return step > 0.0 ? step : 1e-3;
}

Eigen::Index Scenario::steps() const {
  if (domain == Domain::Discrete) return static_cast<Eigen::Index>(std::llround(horizon));
  return static_cast<Eigen::Index>(std::llround(horizon / effective_step()));
}

double Scenario::effective_tolerance() const {
  if (tolerance > 0.0) return tolerance;
  if (module == Module::Siso) return 1e-3;
  if (module == Module::Mimo && domain == Domain::Discrete) return 1e-2;
  return 5e-2;
}

double Scenario::effective_tail_fraction() const {
  if (tail_fraction > 0.0) return tail_fraction;
  return module == Module::Fl ? 0.2 : 0.1;
}

}  // namespace mrac::harness
