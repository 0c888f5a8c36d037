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

#include "iimp/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "iimp/errors.hpp"
#include "iimp/operators.hpp"

namespace iimp {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Rabi: return "rabi";
    case ModelKind::JC: return "jc";
    case ModelKind::Dicke: return "dicke";
    case ModelKind::TC: return "tc";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& s) {
  std::string k = s;
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
  if (k == "rabi") return ModelKind::Rabi;
  if (k == "jc" || k == "jaynes-cummings") return ModelKind::JC;
  if (k == "dicke") return ModelKind::Dicke;
  if (k == "tc" || k == "tavis-cummings") return ModelKind::TC;
  throw ParameterError("unknown model kind '" + s + "'");
}

void ModelParams::validate() const {
  for (double v : {omega_a, omega_0, g, U, gamma}) {
    if (!std::isfinite(v)) throw ParameterError("model frequencies must be finite");
  }
  if (p < 1) throw ParameterError("photon number per transition p must be >= 1");
  if (atoms < 1) throw ParameterError("atom count must be >= 1");
  if (!collective() && atoms != 1) {
    throw ParameterError(std::string(to_string(kind)) + " model takes exactly one atom");
  }
  if (cutoff < p + 2) {
    throw ParameterError("Fock cutoff " + std::to_string(cutoff) + " must be at least p+2 = " +
                         std::to_string(p + 2));
  }
  if (dim() > policy::max_dim) {
    throw SizingError("model dimension " + std::to_string(dim()) + " exceeds " +
                      std::to_string(policy::max_dim));
  }
}

namespace {

struct AtomicOps {
  Operator z;      // sigma_z or J_z
  Operator plus;   // sigma_+ or J_+
  Operator minus;  // sigma_- or J_-
  double z_scale;  // omega_0 multiplies z_scale * z
};

AtomicOps atomic_ops(const ModelParams& p) {
  if (p.collective()) {
    SpinOps s = collective_spin(p.atoms);
    return {s.z, s.plus, s.minus, 1.0};
  }
  PauliOps s = pauli_ops();
  return {s.z, s.plus, s.minus, 0.5};
}

Operator coupling(const ModelParams& p, const AtomicOps& at) {
  const FockCutoff fc(p.cutoff);
  const Operator ap = annihilation_power(fc, p.p);
  const Operator adp = ap.adjoint();
  if (p.rotating_wave()) return kron(adp, at.minus) + kron(ap, at.plus);
  return kron(adp + ap, at.minus + at.plus);
}

}  // namespace

Operator build_hamiltonian(const ModelParams& params) {
  params.validate();
  const FockCutoff fc(params.cutoff);
  const AtomicOps at = atomic_ops(params);
  const std::size_t ad = params.atom_dim();
  const std::size_t fd = static_cast<std::size_t>(params.cutoff);

  const Operator n = number_operator(fc);
  const Operator a2 = annihilation_power(fc, 2);
  const Operator kerr = a2.adjoint() * a2;

  Matrix h = params.omega_a * on_field(n, ad).matrix();
  h += params.omega_0 * at.z_scale * on_atom(at.z, fd).matrix();
  h += params.g * coupling(params, at).matrix();
  h += 0.5 * params.U * on_field(kerr, ad).matrix();
  h += params.gamma * kron(n, at.z).matrix();
  // Symmetrize away roundoff so the Hermitian tag is exact.
  return Operator::hermitian(0.5 * (h + h.adjoint()));
}

Operator dh_dg(const ModelParams& params) {
  params.validate();
  return coupling(params, atomic_ops(params));
}

Operator excitation_number(const ModelParams& params) {
  params.validate();
  const FockCutoff fc(params.cutoff);
  const std::size_t ad = params.atom_dim();
  const AtomicOps at = atomic_ops(params);
  // sigma_+ sigma_- for one atom, J_z + N/2 for an ensemble.
  Operator exc = params.collective()
                     ? at.z + Operator::identity(ad) * Complex(0.5 * params.atoms)
                     : at.plus * at.minus;
  return on_field(number_operator(fc), ad) +
         on_atom(exc, static_cast<std::size_t>(params.cutoff)) * Complex(params.p);
}

Operator atomic_inversion(const ModelParams& params) {
  params.validate();
  return on_atom(atomic_ops(params).z, static_cast<std::size_t>(params.cutoff));
}

Operator photon_number(const ModelParams& params) {
  params.validate();
  return on_field(number_operator(FockCutoff(params.cutoff)), params.atom_dim());
}

}  // namespace iimp
