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
#include <random>

#include "iimp/errors.hpp"
#include "iimp/hilbert.hpp"
#include "iimp/operators.hpp"

using namespace iimp;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  return m;
}

Operator random_hermitian(std::mt19937_64& rng, int n) {
  const Matrix m = random_matrix(rng, n);
  return Operator(0.5 * (m + m.adjoint()));
}

// exp(-i H t) by scaling and squaring a truncated Taylor series.
Matrix taylor_expm(const Matrix& h, double t) {
  const Matrix x = Complex(0.0, -t) * h;
  int s = 0;
  double nrm = x.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.5) {
    nrm /= 2.0;
    ++s;
  }
  const Matrix y = x / std::pow(2.0, s);
  Matrix term = Matrix::Identity(h.rows(), h.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

Matrix naive_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

TEST_CASE("kron of identities and diagonal structure") {
  CHECK(max_abs_diff(kron(Operator::identity(2), Operator::identity(3)), Operator::identity(6)) == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(1, 1) = 1.0;
  const Operator k = kron(Operator(d), Operator::identity(2));
  Matrix want = Matrix::Zero(4, 4);
  want(2, 2) = want(3, 3) = 1.0;
  CHECK(max_abs_diff(k, Operator(want)) == 0.0);
}

TEST_CASE("kron matches an index-loop oracle") {
  const Operator n = number_operator(FockCutoff(3));
  const Operator z = pauli_ops().z;
  CHECK(max_abs_diff(kron(n, z), Operator(naive_kron(n.matrix(), z.matrix()))) == 0.0);
  std::mt19937_64 rng(7);
  const Matrix a = random_matrix(rng, 3), b = random_matrix(rng, 4);
  CHECK(max_abs_diff(kron(Operator(a), Operator(b)), Operator(naive_kron(a, b))) == 0.0);
}

TEST_CASE("kron refuses dimensions beyond the policy maximum") {
  CHECK_THROWS_AS(kron(Operator::identity(100), Operator::identity(50)), SizingError);
}

TEST_CASE("commutator basics") {
  const PauliOps s = pauli_ops();
  CHECK(commutator(s.x, s.x).max_abs() == 0.0);
  CHECK(max_abs_diff(commutator(s.plus, s.minus), s.z) == 0.0);
  CHECK_THROWS_AS(commutator(Operator::identity(2), Operator::identity(3)), ShapeError);
}

TEST_CASE("nested commutator of order 0 and 2") {
  std::mt19937_64 rng(11);
  const Operator h = random_hermitian(rng, 4), a = random_hermitian(rng, 4);
  CHECK(max_abs_diff(nested_commutator(h, a, 0), a) == 0.0);
  const Operator ih = h * I;
  const Operator two = commutator(ih, commutator(ih, a));
  CHECK(max_abs_diff(nested_commutator(h, a, 2), two) < 1e-12);
}

TEST_CASE("expm_unitary against closed forms and a Taylor oracle") {
  const Operator hz = pauli_ops().z * Complex(0.5);
  CHECK(max_abs_diff(expm_unitary(hz, 0.0), Operator::identity(2)) < 1e-15);
  const Operator u = expm_unitary(hz, M_PI);
  CHECK(std::abs(u(0, 0) - std::exp(Complex(0, -M_PI / 2))) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(Complex(0, M_PI / 2))) < 1e-14);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h = random_hermitian(rng, 4);
    CHECK(max_abs_diff(expm_unitary(h, 0.1), Operator(taylor_expm(h.matrix(), 0.1))) <= 1e-10);
    CHECK(max_abs_diff(expm_unitary(h, 3.0), Operator(taylor_expm(h.matrix(), 3.0))) <= 1e-10);
  }
}

TEST_CASE("expm_unitary rejects non-Hermitian generators") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(expm_unitary(Operator(m), 1.0), NumericalError);
}

TEST_CASE("Propagator preserves norm and obeys the group law") {
  std::mt19937_64 rng(5);
  const Operator h = random_hermitian(rng, 6);
  const Propagator p(h);
  const Matrix u = p.unitary(2.3).matrix();
  CHECK((u.adjoint() * u - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(max_abs_diff(p.unitary(0.7) * p.unitary(1.1), p.unitary(1.8)) <= 1e-9);
  Vector v = random_matrix(rng, 6).col(0);
  v.normalize();
  CHECK(std::abs(p.evolve(v, 5.0).norm() - 1.0) < 1e-12);
}

TEST_CASE("expectation values") {
  const FockCutoff fc(10);
  CHECK(expectation(fock_state(0, fc), number_operator(fc)).real() == 0.0);
  CHECK(expectation(fock_state(6, fc), number_operator(fc)).real() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK_THROWS_AS(expectation(fock_state(0, fc), Operator::identity(3)), ShapeError);

  const FockCutoff big(60);
  const Operator a2 = annihilation_power(big, 2);
  const double m = expectation(coherent_state({std::sqrt(6.0), 0.0}, big), a2.adjoint() * a2).real();
  CHECK(std::abs(m - 36.0) <= 1e-6);
}

TEST_CASE("mixed expectations") {
  const FockCutoff fc(5);
  const Operator n = number_operator(fc);
  CHECK(expectation_mixed(DensityMatrix::from_ket(fock_state(0, fc)), n).real() == 0.0);
  const DensityMatrix rho = DensityMatrix::mixture({0.5, 0.5}, {fock_state(0, fc), fock_state(2, fc)});
  CHECK(expectation_mixed(rho, n).real() == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Vector v = random_matrix(rng, 5).col(0);
    const Ket psi = Ket::normalized(v);
    const Operator a(random_matrix(rng, 5));
    CHECK(std::abs(expectation_mixed(DensityMatrix::from_ket(psi), a) - expectation(psi, a)) <= 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  Matrix m = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{m}, NumericalError);  // trace 2
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix{m}, NumericalError);  // negative eigenvalue
  CHECK_THROWS_AS(DensityMatrix::mixture({0.7, 0.7}, {Ket::basis(2, 0), Ket::basis(2, 1)}),
                  NumericalError);
  CHECK_THROWS_AS(DensityMatrix::mixture({1.5, -0.5}, {Ket::basis(2, 0), Ket::basis(2, 1)}),
                  ParameterError);
}

TEST_CASE("pure-state fidelity") {
  const Ket g = Ket::basis(2, kGroundIndex), e = Ket::basis(2, kExcitedIndex);
  CHECK(fidelity_pure(g, g) == doctest::Approx(1.0));
  CHECK(fidelity_pure(g, e) == 0.0);
  const Ket plus = Ket::normalized(g.vector() + e.vector());
  CHECK(fidelity_pure(plus, g) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(fidelity_pure(g, Ket::basis(3, 0)), ShapeError);
}

TEST_CASE("mixed fidelity reduces to the pure overlap") {
  std::mt19937_64 rng(13);
  Vector a = random_matrix(rng, 3).col(0), b = random_matrix(rng, 3).col(1);
  a.normalize();
  b.normalize();
  const double pure = fidelity_pure(Ket(a), Ket(b));
  const double mixed = fidelity_mixed(a * a.adjoint(), b * b.adjoint());
  CHECK(std::abs(pure - mixed) < 1e-7);
  CHECK(fidelity_mixed(Matrix::Identity(2, 2) * 0.5, Matrix::Identity(2, 2) * 0.5) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial traces of a product state") {
  const FockCutoff fc(8);
  const Ket field = coherent_state({0.5, 0.2}, fc);
  const Ket atom = atom_ket(AtomState(0.6, 0.8));
  const Vector psi = product_state(field, atom).vector();
  const Matrix rho = psi * psi.adjoint();
  const Matrix ra = partial_trace_first(rho, 8, 2);
  const Matrix rf = partial_trace_second(rho, 8, 2);
  CHECK((ra - atom.vector() * atom.vector().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((rf - field.vector() * field.vector().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kets validate their norm") {
  Vector v = Vector::Zero(2);
  v(0) = 2.0;
  CHECK_THROWS_AS(Ket{v}, NumericalError);
  CHECK_THROWS_AS(Ket::normalized(Vector::Zero(3)), NumericalError);
}
