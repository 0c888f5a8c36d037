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

#include <algorithm>
#include <cmath>

#include "iimp/errors.hpp"
#include "iimp/models.hpp"
#include "iimp/operators.hpp"

using namespace iimp;

namespace {

ModelParams make(ModelKind kind, int p, int cutoff = 12, int atoms = 1) {
  ModelParams m;
  m.kind = kind;
  m.p = p;
  m.cutoff = cutoff;
  m.atoms = atoms;
  return m;
}

Operator field_op(const Operator& f, const ModelParams& m) { return on_field(f, m.atom_dim()); }
Operator atom_op(const Operator& a, const ModelParams& m) {
  return on_atom(a, static_cast<std::size_t>(m.cutoff));
}

}  // namespace

TEST_CASE("parameter validation") {
  ModelParams m = make(ModelKind::JC, 1);
  m.p = 0;
  CHECK_THROWS_AS(build_hamiltonian(m), ParameterError);
  m = make(ModelKind::JC, 3, 4);
  CHECK_THROWS_AS(build_hamiltonian(m), ParameterError);
  m = make(ModelKind::Dicke, 1, 10, 0);
  CHECK_THROWS_AS(build_hamiltonian(m), ParameterError);
  CHECK(parse_model_kind("Tavis-Cummings") == ModelKind::TC);
  CHECK(parse_model_kind("JC") == ModelKind::JC);
  CHECK_THROWS_AS(parse_model_kind("hubbard"), ParameterError);
}

TEST_CASE("decoupled JC is diagonal with w_a n +- w_0/2") {
  ModelParams m = make(ModelKind::JC, 1, 8);
  m.g = m.U = m.gamma = 0.0;
  const Operator h = build_hamiltonian(m);
  for (std::size_t i = 0; i < h.dim(); ++i) {
    for (std::size_t j = 0; j < h.dim(); ++j) {
      if (i != j) CHECK(std::abs(h(i, j)) == 0.0);
    }
    const double n = static_cast<double>(i / 2);
    const double s = (i % 2) == static_cast<std::size_t>(kExcitedIndex) ? 0.5 : -0.5;
    CHECK(h(i, i).real() == doctest::Approx(m.omega_a * n + s * m.omega_0));
  }
}

TEST_CASE("Hermiticity for every kind") {
  for (ModelKind k : {ModelKind::Rabi, ModelKind::JC, ModelKind::Dicke, ModelKind::TC}) {
    for (int p : {1, 2}) {
      const ModelParams m = make(k, p, 10, k == ModelKind::Dicke || k == ModelKind::TC ? 4 : 1);
      CHECK(build_hamiltonian(m).is_hermitian(1e-12));
      CHECK(dh_dg(m).is_hermitian(1e-12));
    }
  }
}

TEST_CASE("excitation number is conserved by JC and TC") {
  for (int p : {1, 2}) {
    const ModelParams jc = make(ModelKind::JC, p, 30);
    CHECK(commutator(excitation_number(jc), build_hamiltonian(jc)).max_abs() <= 1e-12);
    const ModelParams tc = make(ModelKind::TC, p, 15, 3);
    CHECK(commutator(excitation_number(tc), build_hamiltonian(tc)).max_abs() <= 1e-12);
  }
  // The counter-rotating terms break it.
  const ModelParams rabi = make(ModelKind::Rabi, 1);
  CHECK(commutator(excitation_number(rabi), build_hamiltonian(rabi)).max_abs() > 1e-3);
}

TEST_CASE("Dicke with one atom equals Rabi with doubled dispersive coupling") {
  for (int p : {1, 2}) {
    ModelParams d = make(ModelKind::Dicke, p, 10, 1);
    ModelParams r = make(ModelKind::Rabi, p, 10);
    d.gamma = 2.0 * r.gamma;
    CHECK(max_abs_diff(build_hamiltonian(d), build_hamiltonian(r)) < 1e-14);
    ModelParams t = make(ModelKind::TC, p, 10, 1);
    ModelParams j = make(ModelKind::JC, p, 10);
    t.gamma = 2.0 * j.gamma;
    CHECK(max_abs_diff(build_hamiltonian(t), build_hamiltonian(j)) < 1e-14);
  }
}

TEST_CASE("dH/dg closed forms") {
  const ModelParams r = make(ModelKind::Rabi, 1, 9);
  const FockCutoff fc(9);
  const Operator a = annihilation(fc);
  const Operator want = kron(a + a.adjoint(), pauli_ops().x);
  CHECK(max_abs_diff(dh_dg(r), want) < 1e-15);

  const ModelParams jc2 = make(ModelKind::JC, 2, 9);
  const Operator a2 = annihilation_power(fc, 2);
  const PauliOps s = pauli_ops();
  CHECK(max_abs_diff(dh_dg(jc2), kron(a2.adjoint(), s.minus) + kron(a2, s.plus)) < 1e-15);
}

TEST_CASE("dH/dg matches a finite difference") {
  for (ModelKind k : {ModelKind::Rabi, ModelKind::JC, ModelKind::Dicke, ModelKind::TC}) {
    ModelParams m = make(k, 2, 10, k == ModelKind::Dicke || k == ModelKind::TC ? 3 : 1);
    const double h = 1e-6;
    ModelParams up = m, dn = m;
    up.g += h;
    dn.g -= h;
    const Operator fd = (build_hamiltonian(up) - build_hamiltonian(dn)) * Complex(0.5 / h);
    CHECK(max_abs_diff(fd, dh_dg(m)) <= 1e-8);
  }
}

TEST_CASE("first nested commutators match the closed forms") {
  for (int p : {1, 2}) {
    const ModelParams jc = make(ModelKind::JC, p, 14);
    const FockCutoff fc(14);
    const PauliOps s = pauli_ops();
    const Operator ap = annihilation_power(fc, p);
    const Operator apd = ap.adjoint();
    const Operator h = build_hamiltonian(jc);
    const double g = jc.g;

    const Operator sz_want = (kron(apd, s.minus) - kron(ap, s.plus)) * Complex(0.0, 2.0 * g);
    CHECK(max_abs_diff(nested_commutator(h, atomic_inversion(jc), 1), sz_want) < 1e-12);

    const Operator n_want = (kron(ap, s.plus) - kron(apd, s.minus)) * Complex(0.0, p * g);
    CHECK(max_abs_diff(nested_commutator(h, photon_number(jc), 1), n_want) < 1e-12);

    const ModelParams rabi = make(ModelKind::Rabi, p, 14);
    const Operator r_want = kron(ap + apd, s.minus - s.plus) * Complex(0.0, 2.0 * g);
    CHECK(max_abs_diff(nested_commutator(build_hamiltonian(rabi), atomic_inversion(rabi), 1), r_want) <
          1e-12);
  }
}

TEST_CASE("observables lift to the composite space") {
  const ModelParams tc = make(ModelKind::TC, 1, 6, 4);
  CHECK(atomic_inversion(tc).dim() == 30);
  CHECK(max_abs_diff(atomic_inversion(tc), atom_op(collective_spin(4).z, tc)) == 0.0);
  CHECK(max_abs_diff(photon_number(tc), field_op(number_operator(FockCutoff(6)), tc)) == 0.0);
}
