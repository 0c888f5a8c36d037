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

#include <cmath>
#include <limits>
#include <memory>

#include "iimp/errors.hpp"
#include "iimp/experiments.hpp"
#include "iimp/measurement.hpp"
#include "run_common.hpp"

namespace iimp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Case {
  ModelParams params;
  Json target;
  Json reference;
  Observable observable = Observable::Inversion;
  std::string label;
};

struct CaseLimit {
  IimpResult result;
  double scale = 1.0;
};

bool is_lowest_atom(const Ket& atom, const ModelParams& params) {
  const Ket lowest = parse_atom(Json{{"kind", "ground"}}, params);
  return std::abs(fidelity_pure(atom, lowest) - 1.0) <= 1e-12;
}

/// Reference calibration value that turns the ratio into the plotted quantity.
double reference_scale(const Case& c, const StateSpec& ref, double commutator_value) {
  const bool inversion = c.observable != Observable::PhotonNumber;
  if (!inversion || !is_lowest_atom(*ref.atom, c.params)) return commutator_value;
  const FockCutoff fc(c.params.cutoff);
  const Operator ap = annihilation_power(fc, c.params.p);
  if (c.params.rotating_wave()) return expectation(*ref.field, ap.adjoint() * ap).real();
  const Operator f = ap + ap.adjoint();
  return expectation(*ref.field, f * f).real();
}

CaseLimit compute_limit(const Case& c, Diagnostics* diag) {
  const StateSpec tgt = parse_state(c.target, c.params, diag);
  const StateSpec ref = parse_state(c.reference, c.params, diag);
  const Operator h = build_hamiltonian(c.params);
  const Operator a = observable_operator(c.observable, c.params);
  const int n = detect_order(h, a, tgt.full, ref.full);
  const Operator x = nested_commutator(h, a, n);
  const double vr = expectation(ref.full, x).real();
  CaseLimit out;
  out.scale = reference_scale(c, ref, vr);
  out.result = indirect_estimate(h, a, tgt.full, ref.full, out.scale);
  return out;
}

std::vector<CsvColumn> compute_curves(const Case& c, const std::vector<double>& times_g,
                                      double scale, double ratio0) {
  const StateSpec tgt = parse_state(c.target, c.params);
  const StateSpec ref = parse_state(c.reference, c.params);
  auto prop = std::make_shared<const Propagator>(build_hamiltonian(c.params));
  const Operator a = observable_operator(c.observable, c.params);
  const ExpectationChange dt(prop, tgt.full.vector(), a);
  const ExpectationChange dr(prop, ref.full.vector(), a);
  const Matrix atom0 = reduced_atom(tgt.full.vector(), c.params);

  std::vector<CsvColumn> cols{{"t", {}},     {"delta_target", {}}, {"delta_reference", {}},
                              {"ratio", {}}, {"scaled_ratio", {}}, {"fidelity", {}}};
  for (double tg : times_g) {
    const double t = tg / c.params.g;
    const double vt = dt.value(t);
    const double vr = dr.value(t);
    const double ratio = t > 0.0 ? (vr != 0.0 ? vt / vr : kNaN) : ratio0;
    const Vector psi = prop->evolve(tgt.full.vector(), t);
    cols[0].values.push_back(tg);
    cols[1].values.push_back(vt);
    cols[2].values.push_back(vr);
    cols[3].values.push_back(ratio);
    cols[4].values.push_back(ratio * scale);
    cols[5].values.push_back(fidelity_mixed(reduced_atom(psi, c.params), atom0));
  }
  return cols;
}

ModelKind kind_of(const std::string& kind) {
  try {
    return parse_model_kind(kind);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Case> expand_cases(const Json& config) {
  const Json& model = require(config, "model");
  const Json& target = require(config, "target_state");
  const Json& reference = require(config, "reference_state");
  const Observable obs = parse_observable(get_string(config, "observable", "inversion"));

  std::vector<std::string> kinds{get_string(model, "kind", "jc")};
  std::vector<int> ps{get_int(model, "p", 1)};
  std::vector<Json> targets{target};
  if (config.contains("sweep")) {
    const Json& sw = config.at("sweep");
    if (sw.contains("kinds")) kinds = sw.at("kinds").get<std::vector<std::string>>();
    if (sw.contains("p")) ps = sw.at("p").get<std::vector<int>>();
    if (sw.contains("target_states")) targets = sw.at("target_states").get<std::vector<Json>>();
  }
  const bool single = kinds.size() == 1 && ps.size() == 1 && targets.size() == 1;

  std::vector<Case> cases;
  for (const std::string& kind : kinds) {
    for (int p : ps) {
      for (const Json& t : targets) {
        Json m = model;
        m["kind"] = kind;
        m["p"] = p;
        if (kind_of(kind) != ModelKind::Dicke && kind_of(kind) != ModelKind::TC) m.erase("N");
        Case c;
        c.params = parse_model(m);
        if (!(c.params.g != 0.0)) throw ConfigError("times are in units of 1/g, so g must be nonzero");
        c.target = t;
        c.reference = reference;
        c.observable = obs;
        observable_operator(obs, c.params);
        const std::string tl = parse_state(t, c.params).label;
        c.label = single ? tl : kind + "_p" + std::to_string(p) + "_" + tl;
        cases.push_back(std::move(c));
      }
    }
  }
  return cases;
}

}  // namespace

RunOutcome run_ratio_curves(const Json& config, const RunOptions& opts) {
  const std::vector<Case> cases = expand_cases(config);
  const TimeGrid grid = config.contains("time_grid") ? parse_time_grid(config.at("time_grid"))
                                                     : TimeGrid{};
  const std::vector<double> times = sample_times(grid);
  const std::string out_dir = resolve_output_dir(config, opts, "ratio-curves");

  RunOutcome outcome;
  Diagnostics diag;
  Json limits = Json::array();
  Json results = Json::array();
  Json drift = Json::array();
  double worst = 0.0;
  for (const Case& c : cases) {
    const CaseLimit lim = compute_limit(c, &diag);
    const IimpResult& r = lim.result;
    const double extrapolated = r.estimate;
    const double exact = r.ratio_exact * lim.scale;
    const double diff = std::abs(extrapolated - exact);
    worst = std::max(worst, diff);
    limits.push_back(Json{{"label", c.label},
                          {"model", to_string(c.params.kind)},
                          {"p", c.params.p},
                          {"N", c.params.atoms},
                          {"order_n", r.order_n},
                          {"extrapolated", extrapolated},
                          {"exact", exact},
                          {"abs_diff", diff},
                          {"ratio_extrapolated", r.ratio_numeric},
                          {"ratio_exact", r.ratio_exact},
                          {"error_estimate", r.ratio_numeric_error * std::abs(lim.scale)},
                          {"reference_value", lim.scale}});
    Json entry = dump_result(r);
    entry["label"] = c.label;
    results.push_back(entry);

    const auto cols = compute_curves(c, times, lim.scale, r.ratio_exact);
    const std::string csv = cases.size() == 1 ? join_path(out_dir, "curves.csv")
                                              : join_path(join_path(out_dir, c.label), "curves.csv");
    write_text(csv, csv_text(cols));

    if (opts.cutoff_check) {
      Case big = c;
      big.params.cutoff = scaled_cutoff(c.params.cutoff);
      const CaseLimit lb = compute_limit(big, nullptr);
      const double d = std::max(std::abs(lb.result.estimate - extrapolated),
                                std::abs(lb.result.ratio_exact * lb.scale - exact));
      const bool ok = d < policy::cutoff_drift_tol;
      outcome.passed = outcome.passed && ok;
      drift.push_back(Json{{"label", c.label},
                           {"cutoff", c.params.cutoff},
                           {"cutoff_check", big.params.cutoff},
                           {"drift", d},
                           {"tolerance", policy::cutoff_drift_tol},
                           {"passed", ok}});
    }
  }
  const bool limits_ok = worst <= policy::limit_agreement_tol;
  outcome.passed = outcome.passed && limits_ok;

  write_text(join_path(out_dir, "limits.json"), json_text(Json{{"cases", limits}}));
  Json report{{"experiment", "ratio-curves"},
              {"observable", get_string(config, "observable", "inversion")},
              {"time_unit", "1/g"},
              {"results", results},
              {"limit_agreement", Json{{"max_abs_diff", worst},
                                       {"tolerance", policy::limit_agreement_tol},
                                       {"passed", limits_ok}}},
              {"warnings", diag.warnings}};
  if (opts.cutoff_check) report["cutoff_check"] = drift;
  if (config.contains("assumptions")) report["assumptions"] = config.at("assumptions");
  write_text(join_path(out_dir, "report.json"), json_text(report));

  outcome.summary = Json{{"experiment", "ratio-curves"}, {"output_dir", out_dir},
                         {"passed", outcome.passed}, {"limits", limits}};
  if (opts.cutoff_check) outcome.summary["cutoff_check"] = drift;
  return outcome;
}

}  // namespace iimp
