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

#include "iimp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iimp/errors.hpp"
#include "iimp/policy.hpp"

namespace iimp {

FockCutoff::FockCutoff(int d_) : d(d_) {
  if (d < 2) throw ParameterError("Fock cutoff must be at least 2, got " + std::to_string(d));
  if (static_cast<std::size_t>(d) > policy::max_dim) throw SizingError("Fock cutoff too large");
}

AtomState::AtomState(Complex c_g, Complex c_e) : c_g_(c_g), c_e_(c_e) {
  const double norm2 = std::norm(c_g) + std::norm(c_e);
  if (std::abs(norm2 - 1.0) > policy::atom_norm_tol) {
    throw ParameterError("atom state is not normalized: |c_g|^2+|c_e|^2 = " + std::to_string(norm2));
  }
}

Operator annihilation(FockCutoff cutoff) {
  Matrix a = Matrix::Zero(cutoff.d, cutoff.d);
  for (int n = 1; n < cutoff.d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a));
}

Operator creation(FockCutoff cutoff) { return annihilation(cutoff).adjoint(); }

Operator number_operator(FockCutoff cutoff) {
  Matrix n = Matrix::Zero(cutoff.d, cutoff.d);
  for (int k = 0; k < cutoff.d; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n));
}

Operator annihilation_power(FockCutoff cutoff, int p) {
  if (p < 0) throw ParameterError("negative operator power");
  // <n-p| a^p |n> = sqrt(n!/(n-p)!), built directly to avoid accumulating products.
  Matrix a = Matrix::Zero(cutoff.d, cutoff.d);
  for (int n = p; n < cutoff.d; ++n) {
    double f = 1.0;
    for (int k = n - p + 1; k <= n; ++k) f *= static_cast<double>(k);
    a(n - p, n) = std::sqrt(f);
  }
  return Operator(std::move(a));
}

PauliOps pauli_ops() {
  // basis (|e>, |g>)
  Matrix x(2, 2), y(2, 2), z(2, 2), plus(2, 2), minus(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -I, I, 0;
  z << 1, 0, 0, -1;
  plus << 0, 1, 0, 0;
  minus << 0, 0, 1, 0;
  return {Operator(x), Operator(y), Operator(z), Operator(plus), Operator(minus)};
}

SpinOps collective_spin(int n_atoms) {
  if (n_atoms < 1) throw ParameterError("atom count must be positive");
  const int dim = n_atoms + 1;
  const double j = 0.5 * n_atoms;
  Matrix z = Matrix::Zero(dim, dim);
  Matrix plus = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j - k;
    z(k, k) = m;
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>, and m+1 sits at index k-1.
    if (k > 0) plus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Matrix minus = plus.adjoint();
  Matrix x = 0.5 * (plus + minus);
  Matrix y = (plus - minus) / (2.0 * I);
  return {Operator(x), Operator(y), Operator(z), Operator(plus), Operator(minus)};
}

Operator quadrature(double theta, FockCutoff cutoff) {
  const Matrix a = annihilation(cutoff).matrix();
  const Complex ph = std::exp(I * theta);
  return Operator((a * std::conj(ph) + a.adjoint() * ph) / std::sqrt(2.0));
}

Ket fock_state(int n, FockCutoff cutoff) {
  if (n < 0 || n >= cutoff.d) {
    throw ParameterError("Fock level " + std::to_string(n) + " outside cutoff " +
                         std::to_string(cutoff.d));
  }
  return Ket::basis(static_cast<std::size_t>(cutoff.d), static_cast<std::size_t>(n));
}

namespace {

double poisson_weight(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

}  // namespace

double coherent_truncation_deficit(Complex alpha, FockCutoff cutoff) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  // Sum the tail from the far end so that the result is monotone in the cutoff.
  const int n_max =
      std::max(cutoff.d, static_cast<int>(mean + 40.0 * std::sqrt(mean) + 200.0));
  double tail = 0.0;
  for (int n = n_max; n >= cutoff.d; --n) tail += poisson_weight(mean, n);
  return tail;
}

Ket coherent_state(Complex alpha, FockCutoff cutoff, Diagnostics* diag) {
  const double mean = std::norm(alpha);
  const double deficit = coherent_truncation_deficit(alpha, cutoff);
  if (deficit > policy::coherent_max_deficit) {
    std::ostringstream os;
    os << "coherent state |alpha|^2=" << mean << " truncation deficit " << deficit
       << " exceeds " << policy::coherent_max_deficit << " at cutoff " << cutoff.d;
    throw TruncationError(os.str());
  }
  if (diag != nullptr) {
    if (deficit > policy::coherent_warn_deficit) {
      std::ostringstream os;
      os << "coherent state truncation deficit " << deficit << " at cutoff " << cutoff.d;
      diag->warnings.push_back(os.str());
    }
    if (mean > policy::coherent_occupation_fraction * cutoff.d) {
      std::ostringstream os;
      os << "coherent state |alpha|^2=" << mean << " is large for cutoff " << cutoff.d;
      diag->warnings.push_back(os.str());
    }
  }
  Vector v = Vector::Zero(cutoff.d);
  if (mean == 0.0) {
    v(0) = 1.0;
    return Ket(std::move(v));
  }
  const double phase = std::arg(alpha);
  for (int n = 0; n < cutoff.d; ++n) {
    v(n) = std::sqrt(poisson_weight(mean, n)) * std::exp(I * (phase * n));
  }
  return Ket::normalized(std::move(v));
}

Ket atom_ket(const AtomState& s) {
  Vector v(2);
  v(kExcitedIndex) = s.c_e();
  v(kGroundIndex) = s.c_g();
  return Ket::normalized(std::move(v));
}

Ket dicke_lowest(int n_atoms) {
  if (n_atoms < 1) throw ParameterError("atom count must be positive");
  return Ket::basis(static_cast<std::size_t>(n_atoms + 1), static_cast<std::size_t>(n_atoms));
}

Ket product_state(const Ket& field, const Ket& atom) {
  if (field.dim() * atom.dim() > policy::max_dim) throw SizingError("product state too large");
  return Ket::normalized(kron(field.vector(), atom.vector()));
}

Operator on_field(const Operator& field_op, std::size_t atom_dim) {
  return kron(field_op, Operator::identity(atom_dim));
}

Operator on_atom(const Operator& atom_op, std::size_t field_dim) {
  return kron(Operator::identity(field_dim), atom_op);
}

}  // namespace iimp
