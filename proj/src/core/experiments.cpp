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

#include "iimp/experiments.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "iimp/errors.hpp"
#include "run_common.hpp"

namespace iimp {

namespace fs = std::filesystem;

double get_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  return j.at(key);
}

ModelParams parse_model(const Json& j) {
  if (!j.is_object()) throw ConfigError("'model' must be an object");
  ModelParams p;
  try {
    p.kind = parse_model_kind(get_string(j, "kind", "jc"));
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  p.omega_a = get_number(j, "omega_a", p.omega_a);
  p.omega_0 = get_number(j, "omega_0", p.omega_0);
  p.g = get_number(j, "g", p.g);
  p.U = get_number(j, "U", p.U);
  p.gamma = get_number(j, "gamma", p.gamma);
  p.p = get_int(j, "p", p.p);
  p.atoms = p.collective() ? get_int(j, "N", 1) : 1;
  if (!p.collective() && get_int(j, "N", 1) != 1) {
    throw ConfigError(std::string(to_string(p.kind)) + " model takes N = 1");
  }
  p.cutoff = get_int(j, "cutoff", p.cutoff);
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
  return p;
}

Json model_to_json(const ModelParams& p) {
  return Json{{"kind", to_string(p.kind)}, {"omega_a", p.omega_a}, {"omega_0", p.omega_0},
              {"g", p.g},           {"U", p.U},               {"gamma", p.gamma},
              {"p", p.p},           {"N", p.atoms},           {"cutoff", p.cutoff}};
}

namespace {

Complex parse_coefficient(const Json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("abs")) {
    const double r = get_number(j, "abs", 0.0);
    double arg = get_number(j, "arg", 0.0);
    if (j.contains("arg_deg")) arg = get_number(j, "arg_deg", 0.0) * M_PI / 180.0;
    return std::polar(r, arg);
  }
  throw ConfigError(std::string("'") + what +
                    "' must be a number, [re, im], or {\"abs\": r, \"arg\"|\"arg_deg\": phase}");
}

bool is_field_kind(const std::string& k) {
  return k == "fock" || k == "coherent" || k == "vacuum";
}

bool is_atom_kind(const std::string& k) {
  return k == "ground" || k == "excited" || k == "dicke_lowest" || k == "atom";
}

std::string field_label(const Json& j) {
  const std::string kind = get_string(j, "kind", "");
  if (kind == "fock") return "fock" + std::to_string(get_int(j, "n", 0));
  if (kind == "vacuum") return "vacuum";
  return "coherent";
}

}  // namespace

Ket parse_field(const Json& j, const ModelParams& params, Diagnostics* diag) {
  if (!j.is_object()) throw ConfigError("field state must be an object");
  const std::string kind = get_string(j, "kind", "");
  const FockCutoff fc(params.cutoff);
  try {
    if (kind == "vacuum") return fock_state(0, fc);
    if (kind == "fock") {
      if (!j.contains("n")) throw ConfigError("fock state needs 'n'");
      return fock_state(get_int(j, "n", 0), fc);
    }
    if (kind == "coherent") {
      Complex alpha{get_number(j, "re", 0.0), get_number(j, "im", 0.0)};
      if (j.contains("alpha")) alpha = parse_coefficient(j.at("alpha"), "alpha");
      return coherent_state(alpha, fc, diag);
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown field state kind '" + kind + "'");
}

Ket parse_atom(const Json& j, const ModelParams& params) {
  if (!j.is_object()) throw ConfigError("atom state must be an object");
  const std::string kind = get_string(j, "kind", "");
  const auto ad = params.atom_dim();
  if (kind == "ground" || kind == "dicke_lowest") {
    return params.collective() ? dicke_lowest(params.atoms) : atom_ket(AtomState::ground());
  }
  if (kind == "excited") return Ket::basis(ad, 0);
  if (kind == "atom") {
    if (params.collective()) throw ConfigError("explicit atom amplitudes need a single-atom model");
    const Complex cg = parse_coefficient(require(j, "c_g"), "c_g");
    const Complex ce = parse_coefficient(require(j, "c_e"), "c_e");
    try {
      return atom_ket(AtomState(cg, ce));
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown atom state kind '" + kind + "'");
}

StateSpec parse_state(const Json& j, const ModelParams& params, Diagnostics* diag) {
  if (!j.is_object()) throw ConfigError("state must be an object");
  const std::string kind = get_string(j, "kind", "");
  StateSpec s;
  std::string label;
  if (kind == "product") {
    s.field = parse_field(require(j, "field"), params, diag);
    s.atom = parse_atom(require(j, "atom"), params);
    label = field_label(j.at("field")) + "_" + get_string(j.at("atom"), "kind", "");
  } else if (is_field_kind(kind)) {
    s.field = parse_field(j, params, diag);
    s.atom = parse_atom(Json{{"kind", "ground"}}, params);
    label = field_label(j);
  } else if (is_atom_kind(kind)) {
    s.field = fock_state(0, FockCutoff(params.cutoff));
    s.atom = parse_atom(j, params);
    label = "vacuum_" + kind;
  } else {
    throw ConfigError("unknown state kind '" + kind + "'");
  }
  s.full = product_state(*s.field, *s.atom);
  s.label = get_string(j, "label", label);
  return s;
}

Observable parse_observable(const std::string& s) {
  if (s == "sigma_z") return Observable::SigmaZ;
  if (s == "photon_number") return Observable::PhotonNumber;
  if (s == "J_z" || s == "j_z") return Observable::Jz;
  if (s == "inversion") return Observable::Inversion;
  throw ConfigError("unknown observable '" + s + "'");
}

const char* to_string(Observable o) {
  switch (o) {
    case Observable::SigmaZ: return "sigma_z";
    case Observable::PhotonNumber: return "photon_number";
    case Observable::Jz: return "J_z";
    case Observable::Inversion: return "inversion";
  }
  return "?";
}

Operator observable_operator(Observable o, const ModelParams& params) {
  switch (o) {
    case Observable::SigmaZ:
      if (params.collective()) throw ConfigError("sigma_z needs a single-atom model, use J_z");
      return atomic_inversion(params);
    case Observable::Jz:
      if (!params.collective()) throw ConfigError("J_z needs a collective model, use sigma_z");
      return atomic_inversion(params);
    case Observable::Inversion:
      return atomic_inversion(params);
    case Observable::PhotonNumber:
      return photon_number(params);
  }
  throw ConfigError("unknown observable");
}

TimeGrid parse_time_grid(const Json& j) {
  TimeGrid g;
  if (!j.is_object()) throw ConfigError("'time_grid' must be an object");
  g.t_min = get_number(j, "t_min", g.t_min);
  g.t_max = get_number(j, "t_max", g.t_max);
  g.points = get_int(j, "points", g.points);
  const std::string spacing = get_string(j, "spacing", "linear");
  if (spacing != "linear" && spacing != "log") {
    throw ConfigError("time_grid.spacing must be 'linear' or 'log'");
  }
  g.log_spacing = spacing == "log";
  if (g.t_min < 0.0) throw ConfigError("time_grid.t_min must be >= 0");
  if (g.points < 2) throw ConfigError("time_grid.points must be >= 2");
  if (!(g.t_max > g.t_min)) throw ConfigError("time_grid.t_max must exceed t_min");
  if (g.log_spacing && !(g.t_min > 0.0)) throw ConfigError("log spacing needs t_min > 0");
  return g;
}

std::vector<double> sample_times(const TimeGrid& grid) {
  return grid.log_spacing ? log_grid(grid.t_min, grid.t_max, grid.points)
                          : linear_grid(grid.t_min, grid.t_max, grid.points);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                                  policy::csv_significant_digits);
  return std::string(buf, res.ptr);
}

std::string csv_text(const std::vector<CsvColumn>& columns) {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ',';
      out += format_double(columns[c].values.at(r));
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory for " + path + ": " + ec.message());
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

Matrix reduced_atom(const Vector& psi, const ModelParams& params) {
  const auto ad = static_cast<Eigen::Index>(params.atom_dim());
  const auto fd = static_cast<Eigen::Index>(params.cutoff);
  if (psi.size() != ad * fd) throw ShapeError("state does not match the model dimension");
  // Column n of w is the atomic amplitude vector attached to field level n.
  const Eigen::Map<const Matrix> w(psi.data(), ad, fd);
  return w * w.adjoint();
}

Json load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

std::string resolve_output_dir(const Json& config, const RunOptions& opts,
                               const std::string& experiment) {
  if (!opts.out_dir.empty()) return opts.out_dir;
  return get_string(config, "output_dir", "out/" + experiment);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

Json dump_result(const IimpResult& r) {
  return Json{{"order_n", r.order_n},
              {"ratio_exact", r.ratio_exact},
              {"ratio_numeric", r.ratio_numeric},
              {"ratio_numeric_error", r.ratio_numeric_error},
              {"estimate", r.estimate},
              {"reference_value", r.reference_value}};
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

int scaled_cutoff(int cutoff) {
  return static_cast<int>(std::ceil(policy::cutoff_check_factor * cutoff));
}

RunOutcome run_experiment(const std::string& experiment, const Json& config,
                          const RunOptions& opts) {
  if (config.is_object() && config.contains("experiment")) {
    const std::string declared = get_string(config, "experiment", "");
    if (declared != experiment) {
      throw ConfigError("config declares experiment '" + declared + "' but '" + experiment +
                        "' was requested");
    }
  }
  if (experiment == "tomography") return run_tomography(config, opts);
  if (experiment == "ratio-curves") return run_ratio_curves(config, opts);
  if (experiment == "qfi") return run_qfi(config, opts);
  if (experiment == "validate") return run_validate(config, opts);
  throw ConfigError("unknown experiment '" + experiment +
                    "' (expected tomography, ratio-curves, qfi or validate)");
}

}  // namespace iimp
