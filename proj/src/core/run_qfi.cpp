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
#include "iimp/qfi.hpp"
#include "iimp/richardson.hpp"
#include "run_common.hpp"

namespace iimp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_ratio(double a, double b) { return b != 0.0 ? a / b : kNaN; }

/// Least-squares c in F/t^2 = c + d t^2 over the samples with t in [lo, hi].
double quadratic_coefficient(const std::vector<double>& t, const std::vector<double>& f, double lo,
                             double hi, int* used) {
  double s0 = 0, s1 = 0, s2 = 0, y0 = 0, y1 = 0;
  int n = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0.0) || t[k] < lo * (1 - 1e-12) || t[k] > hi * (1 + 1e-12)) continue;
    const double x = t[k] * t[k];
    const double y = f[k] / x;
    s0 += 1;
    s1 += x;
    s2 += x * x;
    y0 += y;
    y1 += x * y;
    ++n;
  }
  if (used != nullptr) *used = n;
  if (n < 2) throw ConfigError("QFI fit window holds fewer than two grid points");
  const double det = s0 * s2 - s1 * s1;
  return (y0 * s2 - y1 * s1) / det;
}

}  // namespace

RunOutcome run_qfi(const Json& config, const RunOptions& opts) {
  const ModelParams params = parse_model(require(config, "model"));
  if (!(params.g != 0.0)) throw ConfigError("times are in units of 1/g, so g must be nonzero");
  Diagnostics diag;
  const StateSpec tgt = parse_state(require(config, "target_state"), params, &diag);
  const StateSpec ref = parse_state(require(config, "reference_state"), params, &diag);
  TimeGrid grid{0.0, 1e-3, 41, false};
  if (config.contains("time_grid")) grid = parse_time_grid(config.at("time_grid"));
  const std::vector<double> times_g = sample_times(grid);
  const double t0_g = get_number(config, "t0", 1e-3);
  const double h = get_number(config, "h", 0.0);
  double fit_lo = 2.5e-4;
  double fit_hi = 1e-3;
  if (config.contains("fit_window")) {
    const auto w = config.at("fit_window").get<std::vector<double>>();
    if (w.size() != 2 || !(w[1] > w[0]) || !(w[0] > 0.0)) {
      throw ConfigError("fit_window must be [lo, hi] with 0 < lo < hi");
    }
    fit_lo = w[0];
    fit_hi = w[1];
  }
  const std::string out_dir = resolve_output_dir(config, opts, "qfi");
  const double g = params.g;

  const Operator ham = build_hamiltonian(params);
  auto prop = std::make_shared<const Propagator>(ham);
  const Operator inv = atomic_inversion(params);
  const ExpectationChange dt(prop, tgt.full.vector(), inv);
  const ExpectationChange dr(prop, ref.full.vector(), inv);
  double resp0 = kNaN;
  try {
    resp0 = ratio_limit_exact(ham, inv, tgt.full, ref.full);
  } catch (const Error&) {
  }

  std::vector<CsvColumn> cols{{"t", {}},
                              {"qfi_target", {}},
                              {"qfi_reference", {}},
                              {"response_ratio", {}},
                              {"qfi_indirect", {}},
                              {"indirect_over_direct", {}}};
  std::vector<double> t_internal;
  for (double tg : times_g) {
    const double t = tg / g;
    const double ft = qfi_pure(params, tgt.full, t, h).value;
    const double fr = qfi_pure(params, ref.full, t, h).value;
    const double resp = t > 0.0 ? safe_ratio(dt.value(t), dr.value(t)) : resp0;
    cols[0].values.push_back(tg);
    cols[1].values.push_back(ft);
    cols[2].values.push_back(fr);
    cols[3].values.push_back(resp);
    cols[4].values.push_back(resp * fr);
    cols[5].values.push_back(safe_ratio(resp * fr, ft));
    t_internal.push_back(t);
  }
  write_text(join_path(out_dir, "curves.csv"), csv_text(cols));

  int used = 0;
  const double coef_fit =
      quadratic_coefficient(t_internal, cols[1].values, fit_lo / g, fit_hi / g, &used);
  const double coef_exact = short_time_coefficient(params, tgt.full);
  const double fit_rel = std::abs(coef_fit - coef_exact) / std::abs(coef_exact);

  const double ratio_exact = qfi_short_time_ratio(params, tgt.full, ref.full);
  std::vector<double> ladder;
  for (double tg : {1e-3, 5e-4, 2.5e-4}) {
    const double t = tg / g;
    ladder.push_back(qfi_pure(params, tgt.full, t, h).value / qfi_pure(params, ref.full, t, h).value);
  }
  const Extrapolation ex = richardson(ladder, 2.0, {2, 4});
  const double ratio_rel = std::abs(ex.value - ratio_exact) / std::abs(ratio_exact);

  const QfiIndirect ind = qfi_indirect(params, tgt.full, ref.full, t0_g / g, h);
  const double ind_ratio = ind.indirect.value / ind.direct;
  const bool ind_ok = std::abs(ind_ratio - 1.0) <= policy::qfi_window_ratio_tol;
  const bool fit_ok = fit_rel <= policy::qfi_window_ratio_tol;

  RunOutcome outcome;
  outcome.passed = ind_ok && fit_ok;

  Json drift;
  if (opts.cutoff_check) {
    ModelParams big = params;
    big.cutoff = scaled_cutoff(params.cutoff);
    const StateSpec tb = parse_state(config.at("target_state"), big);
    const StateSpec rb = parse_state(config.at("reference_state"), big);
    const double d = std::max(std::abs(short_time_coefficient(big, tb.full) - coef_exact),
                              std::abs(qfi_short_time_ratio(big, tb.full, rb.full) - ratio_exact));
    const bool ok = d < policy::cutoff_drift_tol;
    outcome.passed = outcome.passed && ok;
    drift = Json{{"cutoff", params.cutoff}, {"cutoff_check", big.cutoff}, {"drift", d},
                 {"tolerance", policy::cutoff_drift_tol}, {"passed", ok}};
  }

  Json limits = Json::array({Json{{"label", "qfi_short_time_ratio"},
                                  {"extrapolated", ex.value},
                                  {"exact", ratio_exact},
                                  {"abs_diff", std::abs(ex.value - ratio_exact)}}});
  write_text(join_path(out_dir, "limits.json"), json_text(Json{{"cases", limits}}));

  Json results = Json::array();
  results.push_back(Json{{"lambda_name", ind.indirect.lambda_name}, {"t", t0_g},
                         {"value", ind.direct}, {"method", to_string(QfiMethod::FiniteDifference)}});
  results.push_back(Json{{"lambda_name", ind.indirect.lambda_name}, {"t", t0_g},
                         {"value", ind.indirect.value}, {"method", to_string(QfiMethod::Indirect)}});
  results.push_back(Json{{"lambda_name", "g"}, {"t", 0.0}, {"value", coef_exact},
                         {"method", to_string(QfiMethod::ShortTimeLimit)}});

  Json report{{"experiment", "qfi"},
              {"model", model_to_json(params)},
              {"time_unit", "1/g"},
              {"qfi_time_unit", "1/omega_a"},
              {"target", tgt.label},
              {"reference", ref.label},
              {"results", results},
              {"short_time_fit", Json{{"window", {fit_lo, fit_hi}},
                                      {"points", used},
                                      {"coefficient_fit", coef_fit},
                                      {"coefficient_exact", coef_exact},
                                      {"rel_diff", fit_rel},
                                      {"passed", fit_ok}}},
              {"short_time_ratio", Json{{"exact", ratio_exact},
                                        {"extrapolated", ex.value},
                                        {"rel_diff", ratio_rel}}},
              {"indirect", Json{{"t0", t0_g},
                                {"direct", ind.direct},
                                {"reference_qfi", ind.reference_qfi},
                                {"response_ratio", ind.response_ratio},
                                {"indirect", ind.indirect.value},
                                {"indirect_over_direct", ind_ratio},
                                {"passed", ind_ok}}},
              {"warnings", diag.warnings}};
  if (opts.cutoff_check) report["cutoff_check"] = drift;
  if (config.contains("assumptions")) report["assumptions"] = config.at("assumptions");
  write_text(join_path(out_dir, "report.json"), json_text(report));

  outcome.summary = Json{{"experiment", "qfi"},
                         {"output_dir", out_dir},
                         {"passed", outcome.passed},
                         {"short_time_ratio", report["short_time_ratio"]},
                         {"indirect", report["indirect"]},
                         {"short_time_fit", report["short_time_fit"]}};
  return outcome;
}

}  // namespace iimp
