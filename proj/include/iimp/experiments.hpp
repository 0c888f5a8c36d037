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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iimp/evolution.hpp"
#include "iimp/hilbert.hpp"
#include "iimp/models.hpp"
#include "iimp/operators.hpp"

namespace iimp {

using Json = nlohmann::ordered_json;

/// A state built from a config entry, with its factors kept when it is a product.
struct StateSpec {
  Ket full;
  std::optional<Ket> field;
  std::optional<Ket> atom;
  std::string label;
};

ModelParams parse_model(const Json& j);
Json model_to_json(const ModelParams& p);

/// Accepts {"kind":"product","field":F,"atom":A}, a bare field spec (atom in its
/// lowest state) or a bare atom spec (field in vacuum).
StateSpec parse_state(const Json& j, const ModelParams& params, Diagnostics* diag = nullptr);
Ket parse_field(const Json& j, const ModelParams& params, Diagnostics* diag = nullptr);
Ket parse_atom(const Json& j, const ModelParams& params);

enum class Observable { SigmaZ, PhotonNumber, Jz, Inversion };
Observable parse_observable(const std::string& s);
const char* to_string(Observable o);
/// ConfigError if the observable does not fit the model family.
Operator observable_operator(Observable o, const ModelParams& params);

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 0.1;
  int points = 400;
  bool log_spacing = false;
};
TimeGrid parse_time_grid(const Json& j);
std::vector<double> sample_times(const TimeGrid& grid);

/// Shortest round-trip-safe text with 17 significant digits, "nan" for NaN.
std::string format_double(double v);

struct CsvColumn {
  std::string name;
  std::vector<double> values;
};
std::string csv_text(const std::vector<CsvColumn>& columns);
void write_text(const std::string& path, const std::string& text);

/// Reduced atomic density matrix of a field (x) atom vector.
Matrix reduced_atom(const Vector& psi, const ModelParams& params);

struct RunOptions {
  std::string out_dir;  // overrides config output_dir when non-empty
  bool cutoff_check = false;
  std::uint64_t seed = 20260415;
};

struct RunOutcome {
  bool passed = true;
  Json summary;
};

Json load_config(const std::string& path);

RunOutcome run_experiment(const std::string& experiment, const Json& config, const RunOptions& opts);
RunOutcome run_tomography(const Json& config, const RunOptions& opts);
RunOutcome run_ratio_curves(const Json& config, const RunOptions& opts);
RunOutcome run_qfi(const Json& config, const RunOptions& opts);
RunOutcome run_validate(const Json& config, const RunOptions& opts);

}  // namespace iimp
