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

#include "iimp/errors.hpp"
#include "iimp/models.hpp"
#include "iimp/operators.hpp"
#include "iimp/qfi.hpp"

using namespace iimp;

namespace {

ModelParams model(ModelKind kind, int p, int cutoff) {
  ModelParams m;
  m.kind = kind;
  m.p = p;
  m.cutoff = cutoff;
  return m;
}

Ket fock_g(int n, int cutoff) {
  return product_state(fock_state(n, FockCutoff(cutoff)), atom_ket(AtomState::ground()));
}

}  // namespace

TEST_CASE("QFI vanishes at t = 0") {
  const ModelParams m = model(ModelKind::JC, 1, 12);
  CHECK(qfi_pure(m, fock_g(6, 12), 0.0).value == 0.0);
}

TEST_CASE("short-time coefficient is four times the variance of dH/dg") {
  const ModelParams m = model(ModelKind::JC, 1, 12);
  CHECK(short_time_coefficient(m, fock_g(6, 12)) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(short_time_coefficient(m, fock_g(3, 12)) == doctest::Approx(12.0).epsilon(1e-13));
  for (double t : {1e-3, 2e-3}) {
    const double f = qfi_pure(m, fock_g(6, 12), t).value;
    CHECK(std::abs(f / (t * t) / 24.0 - 1.0) < 0.02);
  }
  CHECK(qfi_short_time_ratio(m, fock_g(6, 12), fock_g(3, 12)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(qfi_short_time_ratio(m, fock_g(7, 12), fock_g(4, 12)) == doctest::Approx(1.75).epsilon(1e-13));
  CHECK(qfi_short_time_ratio(m, fock_g(5, 12), fock_g(5, 12)) == 1.0);

  const ModelParams rabi = model(ModelKind::Rabi, 1, 16);
  CHECK(qfi_short_time_ratio(rabi, fock_g(6, 16), fock_g(3, 16)) == doctest::Approx(13.0 / 7.0).epsilon(1e-13));
  CHECK_THROWS_AS(qfi_short_time_ratio(m, fock_g(6, 12), fock_g(0, 12)), DegenerateReferenceError);
}

TEST_CASE("commuting generator gives F = 4 t^2 Var") {
  // With w_a = w_0 = U = gamma = 0 the Rabi Hamiltonian is g dH/dg.
  ModelParams m = model(ModelKind::Rabi, 1, 40);
  m.omega_a = m.omega_0 = m.U = m.gamma = 0.0;
  const double alpha = 1.5;
  const Ket psi = product_state(coherent_state({alpha, 0.0}, FockCutoff(40)), atom_ket(AtomState::ground()));
  for (double t : {0.5, 3.0}) {
    const double want = 4.0 * t * t * (4.0 * alpha * alpha + 1.0);
    CHECK(std::abs(qfi_pure(m, psi, t).value / want - 1.0) < 1e-6);
  }
}

TEST_CASE("derivative state converges under step halving") {
  const ModelParams m = model(ModelKind::JC, 2, 12);
  const Ket psi = fock_g(5, 12);
  // Central differences: halving the step cuts the error by four.
  const Vector d1 = d_lambda_state(m, psi, 20.0, 1e-4);
  const Vector d2 = d_lambda_state(m, psi, 20.0, 5e-5);
  const Vector d4 = d_lambda_state(m, psi, 20.0, 2.5e-5);
  const double rate = (d1 - d4).norm() / (d2 - d4).norm();
  CHECK(rate == doctest::Approx(5.0).epsilon(0.05));
  CHECK_THROWS_AS(d_lambda_state(m, psi, 1.0, -1.0), ParameterError);
  CHECK_THROWS_AS(qfi_pure(m, psi, 1.0, 0.0, "U"), ParameterError);
  CHECK_THROWS_AS(qfi_pure(m, fock_g(1, 6), 1.0), ShapeError);
}

TEST_CASE("indirect QFI") {
  const ModelParams m = model(ModelKind::JC, 1, 12);
  const double t0 = 1e-3 / m.g;
  const QfiIndirect self = qfi_indirect(m, fock_g(3, 12), fock_g(3, 12), t0);
  CHECK(self.response_ratio == 1.0);
  CHECK(self.indirect.value == doctest::Approx(self.direct).epsilon(1e-14));
  CHECK(self.indirect.method == QfiMethod::Indirect);

  const QfiIndirect q = qfi_indirect(m, fock_g(6, 12), fock_g(3, 12), t0);
  CHECK(std::abs(q.response_ratio - 2.0) < 0.01);
  CHECK(std::abs(q.indirect.value / q.direct - 1.0) < 0.01);
  CHECK(q.direct >= 0.0);
  CHECK_THROWS_AS(qfi_indirect(m, fock_g(6, 12), fock_g(3, 12), 0.0), ParameterError);
  CHECK_THROWS_AS(qfi_indirect(m, fock_g(6, 12), fock_g(0, 12), t0), DegenerateReferenceError);
}
