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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace iimp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex I{0.0, 1.0};

/// Dense square operator on a finite Hilbert space.
class Operator {
 public:
  Operator() = default;
  /// Throws ShapeError if `m` is not square or empty.
  explicit Operator(Matrix m);

  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);
  /// Like the plain constructor but also asserts Hermiticity (NumericalError otherwise).
  static Operator hermitian(Matrix m);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  Operator adjoint() const;
  bool is_hermitian(double rel_tol) const;
  double max_abs() const;

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(Complex s) const;
  Operator operator-() const;

 private:
  Matrix m_;
};

inline Operator operator*(Complex s, const Operator& o) { return o * s; }

/// max |A - B| entrywise; ShapeError on mismatch.
double max_abs_diff(const Operator& a, const Operator& b);

/// Normalized state vector.
class Ket {
 public:
  Ket() = default;
  /// Throws NumericalError if the norm deviates from 1 by more than the policy tolerance.
  explicit Ket(Vector v);
  /// Rescales `v` to unit norm. Throws NumericalError on a zero vector.
  static Ket normalized(Vector v);
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const Vector& vector() const { return v_; }
  Complex operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }

 private:
  Vector v_;
};

/// Positive unit-trace matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Validates Hermiticity, trace and the smallest eigenvalue.
  explicit DensityMatrix(Matrix m);
  static DensityMatrix from_ket(const Ket& psi);
  /// Convex combination sum_k w_k |psi_k><psi_k|. Weights must be non-negative and sum to one.
  static DensityMatrix mixture(const std::vector<double>& weights, const std::vector<Ket>& kets);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double min_eigenvalue() const;

 private:
  Matrix m_;
};

/// Tensor product with entry ((i*B.dim+k),(j*B.dim+l)) = A(i,j)*B(k,l).
Operator kron(const Operator& a, const Operator& b);
Vector kron(const Vector& a, const Vector& b);

Operator commutator(const Operator& a, const Operator& b);

/// (iH)^{xn}(A) = [iH, (iH)^{x(n-1)}(A)], with n = 0 returning A.
Operator nested_commutator(const Operator& h, const Operator& a, int n);

/// exp(-iHt) by Hermitian eigendecomposition.
Operator expm_unitary(const Operator& h, double t);

Complex expectation(const Ket& psi, const Operator& a);
Complex expectation(const Vector& psi, const Operator& a);
Complex expectation_mixed(const DensityMatrix& rho, const Operator& a);
Complex expectation_mixed(const Matrix& rho, const Operator& a);

/// |<psi|phi>|^2.
double fidelity_pure(const Ket& psi, const Ket& phi);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for density matrices of equal dimension.
double fidelity_mixed(const Matrix& rho, const Matrix& sigma);

/// Traces out the leading factor of a (dim_a x dim_b) bipartite matrix.
Matrix partial_trace_first(const Matrix& rho, std::size_t dim_a, std::size_t dim_b);
/// Traces out the trailing factor.
Matrix partial_trace_second(const Matrix& rho, std::size_t dim_a, std::size_t dim_b);

/// Cached eigendecomposition of a Hermitian operator for repeated propagation.
class Propagator {
 public:
  explicit Propagator(const Operator& h);

  std::size_t dim() const { return static_cast<std::size_t>(energies_.size()); }
  const RealVector& energies() const { return energies_; }
  const Matrix& eigenvectors() const { return v_; }

  Operator unitary(double t) const;
  Vector evolve(const Vector& psi, double t) const;
  Matrix evolve_density(const Matrix& rho, double t) const;

  /// Components of `psi` in the eigenbasis.
  Vector to_eigenbasis(const Vector& psi) const;
  Matrix to_eigenbasis_operator(const Matrix& m) const;

 private:
  RealVector energies_;
  Matrix v_;
};

}  // namespace iimp
