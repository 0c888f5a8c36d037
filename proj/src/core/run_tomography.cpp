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

#include <Eigen/Eigenvalues>

#include "iimp/errors.hpp"
#include "iimp/experiments.hpp"
#include "iimp/measurement.hpp"
#include "run_common.hpp"

namespace iimp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
/// A population this close to 0 or 1 forces the coherence to vanish.
constexpr double kBoundaryPopulation = 1e-8;

enum class Entry { RhoEE, ReRhoEG, ImRhoEG };

struct Stage {
  std::string name;
  Json field;
  Json reference_atom;
  double t_start = 0.0;  // 1/g
  double prefactor = 1.0;
  Entry entry = Entry::RhoEE;
};

Entry parse_entry(const std::string& s) {
  if (s == "rho_ee") return Entry::RhoEE;
  if (s == "re_rho_eg") return Entry::ReRhoEG;
  if (s == "im_rho_eg") return Entry::ImRhoEG;
  throw ConfigError("stage entry must be rho_ee, re_rho_eg or im_rho_eg");
}

Json default_stages() {
  const double s = 1.0 / std::sqrt(2.0);
  return Json::array(
      {Json{{"name", "populations"},
            {"field", {{"kind", "vacuum"}}},
            {"reference_atom", {{"kind", "excited"}}},
            {"t_start", 0.0},
            {"prefactor", 1.0},
            {"entry", "rho_ee"}},
       Json{{"name", "real_coherence"},
            {"field", {{"kind", "coherent"}, {"re", 0.0}, {"im", 1.0}}},
            {"reference_atom", {{"kind", "atom"}, {"c_g", {s, 0.0}}, {"c_e", {s, 0.0}}}},
            {"t_start", 0.001},
            {"prefactor", -0.5},
            {"entry", "re_rho_eg"}},
       Json{{"name", "imaginary_coherence"},
            {"field", {{"kind", "coherent"}, {"re", 1.0}, {"im", 0.0}}},
            {"reference_atom", {{"kind", "atom"}, {"c_g", {s, 0.0}}, {"c_e", {0.0, s}}}},
            {"t_start", 0.002},
            {"prefactor", 0.5},
            {"entry", "im_rho_eg"}}});
}

std::vector<Stage> parse_stages(const Json& j) {
  std::vector<Stage> out;
  for (const Json& s : j) {
    Stage st;
    st.name = get_string(s, "name", "stage" + std::to_string(out.size()));
    st.field = require(s, "field");
    st.reference_atom = require(s, "reference_atom");
    st.t_start = get_number(s, "t_start", 0.0);
    st.prefactor = get_number(s, "prefactor", 1.0);
    st.entry = parse_entry(get_string(s, "entry", ""));
    if (st.t_start < 0.0) throw ConfigError("stage t_start must be >= 0");
    out.push_back(std::move(st));
  }
  int seen[3] = {0, 0, 0};
  for (const Stage& st : out) ++seen[static_cast<int>(st.entry)];
  if (seen[0] != 1 || seen[1] != 1 || seen[2] != 1) {
    throw ConfigError("tomography needs exactly one stage per entry (rho_ee, re_rho_eg, im_rho_eg)");
  }
  return out;
}

/// The operator whose reference mean calibrates a stage.
Operator calibration_operator(Entry e, const ModelParams& params) {
  const FockCutoff fc(params.cutoff);
  const PauliOps s = pauli_ops();
  if (e == Entry::RhoEE) return on_atom(s.plus * s.minus, static_cast<std::size_t>(params.cutoff));
  // i(sigma_+ a - a^dag sigma_-)
  const Operator a = annihilation(fc);
  return (kron(a, s.plus) - kron(a.adjoint(), s.minus)) * I;
}

struct StageOutcome {
  Json summary;
  double value = 0.0;
  std::vector<CsvColumn> curves;
  double min_fidelity = 1.0;
};

StageOutcome run_stage(std::size_t index, const Stage& st, const ModelParams& params,
                       const Ket& atom0, const std::vector<double>& times_g, double window_g,
                       Diagnostics* diag) {
  const Ket field = parse_field(st.field, params, diag);
  const Ket ref_atom = parse_atom(st.reference_atom, params);
  const Operator h = build_hamiltonian(params);
  auto prop = std::make_shared<const Propagator>(h);
  const Ket target =
      Ket::normalized(prop->evolve(product_state(field, atom0).vector(), st.t_start / params.g));
  const Ket reference = product_state(field, ref_atom);
  const Operator n_op = photon_number(params);
  const double calib = expectation(reference, calibration_operator(st.entry, params)).real();

  StageOutcome out;
  out.summary = Json{{"stage", index},
                     {"name", st.name},
                     {"t_start", st.t_start},
                     {"prefactor", st.prefactor},
                     {"calibration_value", calib}};
  const std::string where = "stage " + std::to_string(index) + " (" + st.name + "): ";
  if (!(std::abs(calib) >= policy::degenerate_reference_tol)) {
    throw DegenerateReferenceError(where + "reference calibration value vanishes");
  }

  bool degenerate_target = false;
  try {
    const IimpResult r = indirect_estimate(h, n_op, target, reference, calib);
    out.value = st.prefactor * r.estimate;
    out.summary["result"] = dump_result(r);
    out.summary["condition"] = "ok";
  } catch (const OrderMismatchError& e) {
    if (e.vanished() == Side::Reference) {
      throw DegenerateReferenceError(where + e.what());
    }
    degenerate_target = true;
  } catch (const UndetectableOrderError& e) {
    throw DegenerateReferenceError(where + e.what());
  }
  if (degenerate_target) {
    out.value = 0.0;
    out.summary["condition"] = "degenerate-target";
  }
  out.summary["value"] = out.value;

  const ExpectationChange dt(prop, target.vector(), n_op);
  const ExpectationChange dr(prop, reference.vector(), n_op);
  const Matrix atom_start = reduced_atom(target.vector(), params);
  const Matrix atom_initial = atom0.vector() * atom0.vector().adjoint();
  out.curves = {{"t", {}},     {"delta_target", {}}, {"delta_reference", {}},
                {"ratio", {}}, {"scaled_ratio", {}}, {"fidelity", {}}};
  for (double tg : times_g) {
    const double t = tg / params.g;
    const double vt = dt.value(t);
    const double vr = dr.value(t);
    const double ratio = vr != 0.0 ? vt / vr : kNaN;
    const Matrix rho = reduced_atom(prop->evolve(target.vector(), t), params);
    out.curves[0].values.push_back(tg);
    out.curves[1].values.push_back(vt);
    out.curves[2].values.push_back(vr);
    out.curves[3].values.push_back(ratio);
    out.curves[4].values.push_back(st.prefactor * ratio * calib);
    out.curves[5].values.push_back(fidelity_mixed(rho, atom_start));
  }

  // Non-disturbance over the measurement window, on its own dense grid.
  const std::vector<double> window = linear_grid(0.0, window_g, 201);
  double min_f = 1.0;
  double min_overlap = 1.0;
  for (double tg : window) {
    const Matrix rho = reduced_atom(prop->evolve(target.vector(), tg / params.g), params);
    min_f = std::min(min_f, fidelity_mixed(rho, atom_start));
    min_overlap = std::min(min_overlap, fidelity_mixed(rho, atom_initial));
  }
  out.min_fidelity = min_f;
  out.summary["window"] = window_g;
  out.summary["min_fidelity"] = min_f;
  out.summary["min_overlap_with_initial_atom"] = min_overlap;
  out.summary["fidelity_passed"] = min_f >= policy::non_disturbance_fidelity;
  return out;
}

struct Reconstruction {
  double rho_ee = 0.0;
  Complex rho_eg = 0.0;
  std::vector<StageOutcome> stages;
};

Reconstruction reconstruct(const ModelParams& params, const Ket& atom0,
                           const std::vector<Stage>& stages, const std::vector<double>& times_g,
                           double window_g, Diagnostics* diag) {
  Reconstruction rec;
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    StageOutcome so = run_stage(k, stages[k], params, atom0, times_g, window_g, diag);
    switch (stages[k].entry) {
      case Entry::RhoEE: rec.rho_ee = so.value; break;
      case Entry::ReRhoEG: re = so.value; break;
      case Entry::ImRhoEG: im = so.value; break;
    }
    rec.stages.push_back(std::move(so));
  }
  const bool boundary =
      rec.rho_ee <= kBoundaryPopulation || 1.0 - rec.rho_ee <= kBoundaryPopulation;
  if (boundary) {
    // |rho_eg|^2 <= rho_ee rho_gg, so a pure population forces zero coherence.
    for (std::size_t k = 0; k < stages.size(); ++k) {
      if (stages[k].entry == Entry::RhoEE) continue;
      rec.stages[k].summary["condition"] = "degenerate-target";
      rec.stages[k].summary["value"] = 0.0;
    }
    re = 0.0;
    im = 0.0;
  }
  rec.rho_eg = {re, im};
  return rec;
}

Json entry_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

RunOutcome run_tomography(const Json& config, const RunOptions& opts) {
  const ModelParams params = parse_model(require(config, "model"));
  if (params.kind != ModelKind::JC || params.p != 1) {
    throw ConfigError("tomography runs on the JC model with p = 1");
  }
  if (!(params.g != 0.0)) throw ConfigError("times are in units of 1/g, so g must be nonzero");
  const Ket atom0 = parse_atom(require(config, "target_state"), params);
  const std::vector<Stage> stages =
      parse_stages(config.contains("stages") ? config.at("stages") : default_stages());
  TimeGrid grid{0.0, policy::non_disturbance_window, 201, false};
  if (config.contains("time_grid")) grid = parse_time_grid(config.at("time_grid"));
  const std::vector<double> times = sample_times(grid);
  const double window = get_number(config, "fidelity_window", policy::non_disturbance_window);
  const std::string out_dir = resolve_output_dir(config, opts, "tomography");

  Diagnostics diag;
  const Reconstruction rec = reconstruct(params, atom0, stages, times, window, &diag);

  Matrix rho(2, 2);
  rho(0, 0) = rec.rho_ee;
  rho(0, 1) = rec.rho_eg;
  rho(1, 0) = std::conj(rec.rho_eg);
  rho(1, 1) = 1.0 - rec.rho_ee;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double trace = rho.trace().real();
  const Matrix truth = atom0.vector() * atom0.vector().adjoint();

  RunOutcome outcome;
  double min_fidelity = 1.0;
  Json stage_summaries = Json::array();
  for (std::size_t k = 0; k < rec.stages.size(); ++k) {
    const StageOutcome& so = rec.stages[k];
    min_fidelity = std::min(min_fidelity, so.min_fidelity);
    stage_summaries.push_back(so.summary);
    write_text(join_path(join_path(out_dir, "stage" + std::to_string(k)), "curves.csv"),
               csv_text(so.curves));
  }
  const bool positive = lmin >= -1e-8;
  const bool fidelity_ok = min_fidelity >= policy::non_disturbance_fidelity;
  outcome.passed = positive && fidelity_ok;

  Json dm{{"basis", {"e", "g"}},
          {"entries",
           {{entry_json(rho(0, 0)), entry_json(rho(0, 1))},
            {entry_json(rho(1, 0)), entry_json(rho(1, 1))}}},
          {"trace", trace},
          {"min_eigenvalue", lmin},
          {"true_entries",
           {{entry_json(truth(0, 0)), entry_json(truth(0, 1))},
            {entry_json(truth(1, 0)), entry_json(truth(1, 1))}}},
          {"max_abs_error", (rho - truth).cwiseAbs().maxCoeff()}};
  write_text(join_path(out_dir, "density_matrix.json"), json_text(dm));

  Json limits = Json::array();
  const double exact_entries[3] = {truth(0, 0).real(), truth(0, 1).real(), truth(0, 1).imag()};
  const double got_entries[3] = {rec.rho_ee, rec.rho_eg.real(), rec.rho_eg.imag()};
  const char* names[3] = {"rho_ee", "re_rho_eg", "im_rho_eg"};
  for (int k = 0; k < 3; ++k) {
    limits.push_back(Json{{"label", names[k]},
                          {"extrapolated", got_entries[k]},
                          {"exact", exact_entries[k]},
                          {"abs_diff", std::abs(got_entries[k] - exact_entries[k])}});
  }
  write_text(join_path(out_dir, "limits.json"), json_text(Json{{"cases", limits}}));

  Json drift;
  if (opts.cutoff_check) {
    ModelParams big = params;
    big.cutoff = scaled_cutoff(params.cutoff);
    const Reconstruction rb = reconstruct(big, Ket::normalized(atom0.vector()), stages,
                                          {0.0, policy::non_disturbance_window}, window, nullptr);
    const double d = std::max({std::abs(rb.rho_ee - rec.rho_ee),
                               std::abs(rb.rho_eg - rec.rho_eg)});
    const bool ok = d < policy::cutoff_drift_tol;
    outcome.passed = outcome.passed && ok;
    drift = Json{{"cutoff", params.cutoff}, {"cutoff_check", big.cutoff}, {"drift", d},
                 {"tolerance", policy::cutoff_drift_tol}, {"passed", ok}};
  }

  Json report{{"experiment", "tomography"},
              {"model", model_to_json(params)},
              {"time_unit", "1/g"},
              {"stages", stage_summaries},
              {"density_matrix", dm},
              {"positivity_passed", positive},
              {"min_window_fidelity", min_fidelity},
              {"fidelity_threshold", policy::non_disturbance_fidelity},
              {"fidelity_passed", fidelity_ok},
              {"warnings", diag.warnings}};
  if (opts.cutoff_check) report["cutoff_check"] = drift;
  if (config.contains("assumptions")) report["assumptions"] = config.at("assumptions");
  write_text(join_path(out_dir, "report.json"), json_text(report));

  outcome.summary = Json{{"experiment", "tomography"},
                         {"output_dir", out_dir},
                         {"passed", outcome.passed},
                         {"density_matrix", dm},
                         {"min_window_fidelity", min_fidelity}};
  if (opts.cutoff_check) outcome.summary["cutoff_check"] = drift;
  return outcome;
}

}  // namespace iimp
