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

#include "iimp/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "iimp/errors.hpp"
#include "iimp/policy.hpp"

namespace iimp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Shape: return "shape error";
    case ErrorCode::Sizing: return "sizing error";
    case ErrorCode::Numerical: return "numerical error";
    case ErrorCode::Parameter: return "parameter error";
    case ErrorCode::DegenerateReference: return "degenerate reference";
    case ErrorCode::UndetectableOrder: return "undetectable order";
    case ErrorCode::OrderMismatch: return "order mismatch";
    case ErrorCode::Underflow: return "underflow";
    case ErrorCode::Step: return "step error";
    case ErrorCode::Truncation: return "truncation error";
    case ErrorCode::Config: return "config error";
    case ErrorCode::Io: return "io error";
  }
  return "unknown error";
}

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw ShapeError("operator must be a non-empty square matrix, got " +
                     std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
}

Operator Operator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Identity(n, n));
}

Operator Operator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Zero(n, n));
}

Operator Operator::hermitian(Matrix m) {
  Operator op(std::move(m));
  if (!op.is_hermitian(policy::hermitian_rel_tol)) {
    throw NumericalError("operator tagged Hermitian is not Hermitian within tolerance");
  }
  return op;
}

Operator Operator::adjoint() const { return Operator(m_.adjoint()); }

bool Operator::is_hermitian(double rel_tol) const {
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  return dev <= rel_tol * std::max(1.0, max_abs());
}

double Operator::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

Operator Operator::operator+(const Operator& o) const {
  require_same_dim(dim(), o.dim(), "operator sum");
  return Operator(m_ + o.m_);
}

Operator Operator::operator-(const Operator& o) const {
  require_same_dim(dim(), o.dim(), "operator difference");
  return Operator(m_ - o.m_);
}

Operator Operator::operator*(const Operator& o) const {
  require_same_dim(dim(), o.dim(), "operator product");
  return Operator(m_ * o.m_);
}

Operator Operator::operator*(Complex s) const { return Operator(m_ * s); }

Operator Operator::operator-() const { return Operator(-m_); }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Ket::Ket(Vector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw ShapeError("ket must be non-empty");
  const double norm = v_.norm();
  if (!(std::abs(norm - 1.0) <= policy::ket_norm_tol)) {
    throw NumericalError("ket is not normalized: norm = " + std::to_string(norm));
  }
}

Ket Ket::normalized(Vector v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("cannot normalize a zero vector");
  return Ket(v / norm);
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ShapeError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw ShapeError("density matrix must be square");
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > policy::density_hermitian_tol) {
    throw NumericalError("density matrix is not Hermitian: deviation " + std::to_string(herm));
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > policy::density_trace_tol) {
    throw NumericalError("density matrix trace is " + std::to_string(tr.real()));
  }
  const double lmin = min_eigenvalue();
  if (lmin < policy::density_min_eigenvalue) {
    throw NumericalError("density matrix has negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi) {
  return DensityMatrix(psi.vector() * psi.vector().adjoint());
}

DensityMatrix DensityMatrix::mixture(const std::vector<double>& weights,
                                     const std::vector<Ket>& kets) {
  if (weights.empty() || weights.size() != kets.size()) {
    throw ShapeError("mixture needs one weight per ket");
  }
  const auto n = static_cast<Eigen::Index>(kets.front().dim());
  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < kets.size(); ++k) {
    require_same_dim(kets[k].dim(), kets.front().dim(), "mixture");
    if (weights[k] < 0.0) throw ParameterError("mixture weights must be non-negative");
    rho += weights[k] * kets[k].vector() * kets[k].vector().adjoint();
  }
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("density matrix eigensolver failed");
  return es.eigenvalues().minCoeff();
}

Operator kron(const Operator& a, const Operator& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > policy::max_dim) {
    throw SizingError("kron result dimension " + std::to_string(da * db) + " exceeds " +
                      std::to_string(policy::max_dim));
  }
  const auto na = static_cast<Eigen::Index>(da);
  const auto nb = static_cast<Eigen::Index>(db);
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  }
  return Operator(std::move(out));
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator nested_commutator(const Operator& h, const Operator& a, int n) {
  require_same_dim(h.dim(), a.dim(), "nested_commutator");
  if (n < 0) throw ParameterError("nested commutator order must be non-negative");
  const Matrix ih = I * h.matrix();
  Matrix x = a.matrix();
  for (int k = 0; k < n; ++k) x = (ih * x - x * ih).eval();
  return Operator(std::move(x));
}

Operator expm_unitary(const Operator& h, double t) { return Propagator(h).unitary(t); }

Complex expectation(const Vector& psi, const Operator& a) {
  require_same_dim(static_cast<std::size_t>(psi.size()), a.dim(), "expectation");
  return psi.dot(a.matrix() * psi);
}

Complex expectation(const Ket& psi, const Operator& a) { return expectation(psi.vector(), a); }

Complex expectation_mixed(const Matrix& rho, const Operator& a) {
  require_same_dim(static_cast<std::size_t>(rho.rows()), a.dim(), "expectation_mixed");
  // Tr[rho A] without forming the product.
  return (rho.transpose().array() * a.matrix().array()).sum();
}

Complex expectation_mixed(const DensityMatrix& rho, const Operator& a) {
  return expectation_mixed(rho.matrix(), a);
}

double fidelity_pure(const Ket& psi, const Ket& phi) {
  require_same_dim(psi.dim(), phi.dim(), "fidelity_pure");
  return std::norm(psi.vector().dot(phi.vector()));
}

namespace {

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("matrix square root failed");
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity_mixed(const Matrix& rho, const Matrix& sigma) {
  require_same_dim(static_cast<std::size_t>(rho.rows()), static_cast<std::size_t>(sigma.rows()),
                   "fidelity_mixed");
  const Matrix s = psd_sqrt(rho);
  Matrix inner = s * sigma * s;
  inner = (0.5 * (inner + inner.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("fidelity eigensolver failed");
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

Matrix partial_trace_first(const Matrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (static_cast<std::size_t>(rho.rows()) != dim_a * dim_b) {
    throw ShapeError("partial trace: dimension mismatch");
  }
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);
  Matrix out = Matrix::Zero(nb, nb);
  for (Eigen::Index i = 0; i < na; ++i) out += rho.block(i * nb, i * nb, nb, nb);
  return out;
}

Matrix partial_trace_second(const Matrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (static_cast<std::size_t>(rho.rows()) != dim_a * dim_b) {
    throw ShapeError("partial trace: dimension mismatch");
  }
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);
  Matrix out = Matrix::Zero(na, na);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) out(i, j) = rho.block(i * nb, j * nb, nb, nb).trace();
  }
  return out;
}

Propagator::Propagator(const Operator& h) {
  if (!h.is_hermitian(policy::hermitian_rel_tol)) {
    throw NumericalError("propagator requires a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed (dim " + std::to_string(h.dim()) +
                         ", max|H| = " + std::to_string(h.max_abs()) + ")");
  }
  energies_ = es.eigenvalues();
  v_ = es.eigenvectors();
}

Operator Propagator::unitary(double t) const {
  Vector phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::exp(-I * (energies_(k) * t));
  return Operator(v_ * phases.asDiagonal() * v_.adjoint());
}

Vector Propagator::evolve(const Vector& psi, double t) const {
  require_same_dim(static_cast<std::size_t>(psi.size()), dim(), "evolve");
  Vector c = v_.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(-I * (energies_(k) * t));
  return v_ * c;
}

Matrix Propagator::evolve_density(const Matrix& rho, double t) const {
  require_same_dim(static_cast<std::size_t>(rho.rows()), dim(), "evolve_density");
  Matrix r = v_.adjoint() * rho * v_;
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    for (Eigen::Index k = 0; k < r.cols(); ++k) {
      r(j, k) *= std::exp(-I * ((energies_(j) - energies_(k)) * t));
    }
  }
  return v_ * r * v_.adjoint();
}

Vector Propagator::to_eigenbasis(const Vector& psi) const { return v_.adjoint() * psi; }

Matrix Propagator::to_eigenbasis_operator(const Matrix& m) const { return v_.adjoint() * m * v_; }

}  // namespace iimp
