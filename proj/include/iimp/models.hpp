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

#include <string>

#include "iimp/hilbert.hpp"
#include "iimp/policy.hpp"

namespace iimp {

enum class ModelKind { Rabi, JC, Dicke, TC };

const char* to_string(ModelKind kind);
/// Accepts "rabi", "jc", "dicke", "tc" (case-insensitive). ParameterError otherwise.
ModelKind parse_model_kind(const std::string& s);

/// One light-matter Hamiltonian on field (x) atoms.
struct ModelParams {
  ModelKind kind = ModelKind::JC;
  double omega_a = policy::default_omega_a;
  double omega_0 = policy::default_omega_0;
  double g = policy::default_coupling;
  double U = policy::default_kerr;
  double gamma = policy::default_dispersive;
  int p = 1;
  int atoms = 1;
  int cutoff = policy::default_fock_cutoff;

  /// Throws ParameterError on an invalid record.
  void validate() const;
  bool collective() const { return kind == ModelKind::Dicke || kind == ModelKind::TC; }
  bool rotating_wave() const { return kind == ModelKind::JC || kind == ModelKind::TC; }
  std::size_t atom_dim() const { return static_cast<std::size_t>(atoms + 1); }
  std::size_t dim() const { return static_cast<std::size_t>(cutoff) * atom_dim(); }
};

Operator build_hamiltonian(const ModelParams& params);

/// The coupling operator multiplying g.
Operator dh_dg(const ModelParams& params);

/// a^dag a + p * (atomic excitation), conserved by JC and TC.
Operator excitation_number(const ModelParams& params);

/// sigma_z for single-atom models, J_z for collective ones, lifted to the full space.
Operator atomic_inversion(const ModelParams& params);

/// a^dag a lifted to the full space.
Operator photon_number(const ModelParams& params);

}  // namespace iimp
