// Copyright 2026 The iimp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "iimp/errors.hpp"
#include "iimp/experiments.hpp"

using namespace iimp;

namespace {

std::string out_dir(const std::string& name) { return std::string(IIMP_TEST_OUT) + "/" + name; }

std::string config_path(const std::string& name) { return std::string(IIMP_CONFIG_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunOptions opts_for(const std::string& name) {
  RunOptions o;
  o.out_dir = out_dir(name);
  return o;
}

const Json* find_check(const Json& summary, const std::string& name) {
  for (const Json& c : summary.at("checks")) {
    if (c.at("name") == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("model parsing") {
  const ModelParams p = parse_model(Json::parse(R"({"kind": "dicke", "N": 4, "p": 2, "cutoff": 9})"));
  CHECK(p.kind == ModelKind::Dicke);
  CHECK(p.atoms == 4);
  CHECK(p.p == 2);
  CHECK(p.g == policy::default_coupling);
  CHECK_THROWS_AS(parse_model(Json::parse(R"({"kind": "jc", "N": 3})")), ConfigError);
  CHECK_THROWS_AS(parse_model(Json::parse(R"({"kind": "jc", "g": "big"})")), ConfigError);
  CHECK_THROWS_AS(parse_model(Json::parse(R"({"kind": "jc", "p": 1.5})")), ConfigError);
  CHECK_THROWS_AS(parse_model(Json::parse(R"({"kind": "spin-boson"})")), ConfigError);
  CHECK_THROWS_AS(parse_model(Json::parse("[1, 2]")), ConfigError);
  const Json round = model_to_json(p);
  CHECK(parse_model(round).cutoff == 9);
}

TEST_CASE("state parsing") {
  const ModelParams p = parse_model(Json::parse(R"({"kind": "jc", "cutoff": 20})"));
  const StateSpec f = parse_state(Json::parse(R"({"kind": "fock", "n": 4})"), p);
  CHECK(f.label == "fock4");
  CHECK(f.full.dim() == 40);
  CHECK(std::abs(f.full[4 * 2 + kGroundIndex] - 1.0) < 1e-15);

  const StateSpec a = parse_state(Json::parse(R"({"kind": "atom", "c_g": 0.6, "c_e": {"abs": 0.8, "arg_deg": 90}})"), p);
  CHECK(std::abs(a.full[kExcitedIndex] - Complex(0.0, 0.8)) < 1e-15);
  CHECK(a.label == "vacuum_atom");

  const StateSpec c = parse_state(
      Json::parse(R"({"kind": "product", "field": {"kind": "coherent", "alpha": [0.5, 0.5]}, "atom": {"kind": "excited"}, "label": "x"})"), p);
  CHECK(c.label == "x");
  CHECK_THROWS_AS(parse_state(Json::parse(R"({"kind": "fock"})"), p), ConfigError);
  CHECK_THROWS_AS(parse_state(Json::parse(R"({"kind": "fock", "n": 20})"), p), ConfigError);
  CHECK_THROWS_AS(parse_state(Json::parse(R"({"kind": "squeezed"})"), p), ConfigError);
  CHECK_THROWS_AS(parse_state(Json::parse(R"({"kind": "atom", "c_g": 1, "c_e": 1})"), p), ConfigError);
  CHECK_THROWS_AS(parse_state(Json::parse(R"({"kind": "coherent", "re": 6.0})"), p), TruncationError);

  const ModelParams d = parse_model(Json::parse(R"({"kind": "tc", "N": 3, "cutoff": 5})"));
  CHECK_THROWS_AS(parse_atom(Json::parse(R"({"kind": "atom", "c_g": 1, "c_e": 0})"), d), ConfigError);
  CHECK(parse_atom(Json::parse(R"({"kind": "ground"})"), d).dim() == 4);
}

TEST_CASE("observables and time grids") {
  const ModelParams jc = parse_model(Json::parse(R"({"kind": "jc", "cutoff": 5})"));
  const ModelParams tc = parse_model(Json::parse(R"({"kind": "tc", "N": 2, "cutoff": 5})"));
  CHECK(parse_observable("sigma_z") == Observable::SigmaZ);
  CHECK_THROWS_AS(parse_observable("parity"), ConfigError);
  CHECK_THROWS_AS(observable_operator(Observable::SigmaZ, tc), ConfigError);
  CHECK_THROWS_AS(observable_operator(Observable::Jz, jc), ConfigError);
  CHECK(max_abs_diff(observable_operator(Observable::Inversion, tc), atomic_inversion(tc)) == 0.0);

  const TimeGrid g = parse_time_grid(Json::parse(R"({"t_min": 1e-3, "t_max": 1, "points": 4, "spacing": "log"})"));
  const std::vector<double> t = sample_times(g);
  REQUIRE(t.size() == 4);
  CHECK(t[1] == doctest::Approx(1e-2));
  CHECK_THROWS_AS(parse_time_grid(Json::parse(R"({"t_min": 0, "t_max": 1, "spacing": "log"})")), ConfigError);
  CHECK_THROWS_AS(parse_time_grid(Json::parse(R"({"t_min": 2, "t_max": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_time_grid(Json::parse(R"({"points": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_time_grid(Json::parse(R"({"spacing": "cubic"})")), ConfigError);
  CHECK(sample_times(TimeGrid{}).size() == 400);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.0, -1e-300, 6.02214076e23}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  const std::string csv = csv_text({{"a", {1.0, 2.5}}, {"b", {0.0, -1.0}}});
  CHECK(csv == "a,b\n1,0\n2.5,-1\n");
}

TEST_CASE("reduced atomic state") {
  const ModelParams p = parse_model(Json::parse(R"({"kind": "jc", "cutoff": 6})"));
  const StateSpec s = parse_state(Json::parse(R"({"kind": "product", "field": {"kind": "fock", "n": 2}, "atom": {"kind": "atom", "c_g": 0.6, "c_e": 0.8}})"), p);
  const Matrix r = reduced_atom(s.full.vector(), p);
  CHECK(std::abs(r(0, 0) - 0.64) < 1e-15);
  CHECK(std::abs(r(0, 1) - 0.48) < 1e-15);
  CHECK_THROWS_AS(reduced_atom(Vector::Zero(3), p), ShapeError);
}

TEST_CASE("config loading and dispatch") {
  CHECK_THROWS_AS(load_config(config_path("missing.json")), IoError);
  const Json cfg = load_config(config_path("qfi_self.json"));
  CHECK_THROWS_AS(run_experiment("tomography", cfg, opts_for("mismatch")), ConfigError);
  CHECK_THROWS_AS(run_experiment("spectroscopy", Json::object(), opts_for("unknown")), ConfigError);
}

TEST_CASE("ratio-curves output is deterministic") {
  Json cfg = load_config(config_path("jc_ratio.json"));
  cfg.erase("sweep");
  cfg["model"]["cutoff"] = 20;
  cfg["time_grid"]["points"] = 20;
  const RunOutcome a = run_ratio_curves(cfg, opts_for("det_a"));
  const RunOutcome b = run_ratio_curves(cfg, opts_for("det_b"));
  CHECK(a.passed);
  const std::string ca = slurp(out_dir("det_a") + "/curves.csv");
  CHECK(!ca.empty());
  CHECK(ca == slurp(out_dir("det_b") + "/curves.csv"));
  CHECK(slurp(out_dir("det_a") + "/limits.json") == slurp(out_dir("det_b") + "/limits.json"));
  const Json lim = a.summary.at("limits").at(0);
  CHECK(lim.at("exact").get<double>() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("tomography of basis states") {
  Json cfg = load_config(config_path("atom_tomography.json"));
  cfg["model"]["cutoff"] = 12;
  cfg["time_grid"]["points"] = 5;

  cfg["target_state"] = Json::parse(R"({"kind": "atom", "c_g": 0, "c_e": 1})");
  const RunOutcome e = run_tomography(cfg, opts_for("tomo_e"));
  const Json& dm = e.summary.at("density_matrix");
  CHECK(std::abs(dm.at("entries")[0][0].at("re").get<double>() - 1.0) < 1e-6);
  CHECK(dm.at("entries")[0][1].at("re").get<double>() == 0.0);
  CHECK(dm.at("trace").get<double>() == doctest::Approx(1.0));

  cfg["target_state"] = Json::parse(R"({"kind": "ground"})");
  const RunOutcome g = run_tomography(cfg, opts_for("tomo_g"));
  CHECK(std::abs(g.summary.at("density_matrix").at("entries")[0][0].at("re").get<double>()) < 1e-12);
  const Json report = Json::parse(slurp(out_dir("tomo_g") + "/report.json"));
  CHECK(report.at("stages")[0].at("condition") == "degenerate-target");
  CHECK(report.at("stages")[1].at("condition") == "degenerate-target");

  Json bad = cfg;
  bad["stages"].erase(2);
  CHECK_THROWS_AS(run_tomography(bad, opts_for("tomo_bad")), ConfigError);
  bad = cfg;
  bad["model"]["p"] = 2;
  CHECK_THROWS_AS(run_tomography(bad, opts_for("tomo_bad")), ConfigError);
}

TEST_CASE("QFI run against itself") {
  const RunOutcome q = run_qfi(load_config(config_path("qfi_self.json")), opts_for("qfi_self"));
  CHECK(q.passed);
  CHECK(q.summary.at("indirect").at("response_ratio").get<double>() == 1.0);
  CHECK(q.summary.at("short_time_ratio").at("exact").get<double>() == 1.0);
}

TEST_CASE("validate mutations are caught") {
  RunOptions o = opts_for("validate_ok");
  const RunOutcome ok = run_validate(Json::object(), o);
  CHECK(ok.passed);
  CHECK(ok.summary.at("seed").get<std::uint64_t>() == o.seed);

  const RunOutcome printed = run_validate(Json{{"jc_block_mode", "as-printed"}}, opts_for("validate_printed"));
  CHECK(!printed.passed);
  const Json* c = find_check(printed.summary, "jc_analytic_vs_numeric");
  REQUIRE(c != nullptr);
  CHECK(!c->at("passed").get<bool>());
  CHECK(c->at("detail").get<std::string>().find("failing blocks n = 2 3") != std::string::npos);

  const RunOutcome low = run_validate(Json{{"cutoff", 20}}, opts_for("validate_low"));
  CHECK(!low.passed);
  const Json* cc = find_check(low.summary, "cutoff_convergence");
  REQUIRE(cc != nullptr);
  CHECK(!cc->at("passed").get<bool>());

  CHECK_THROWS_AS(run_validate(Json{{"jc_block_mode", "guess"}}, opts_for("validate_bad")), ConfigError);
}
