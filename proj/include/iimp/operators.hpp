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
#include <vector>

#include "iimp/hilbert.hpp"

namespace iimp {

/// Fock basis {|0>, ..., |d-1>}.
struct FockCutoff {
  int d = 0;
  explicit FockCutoff(int d_);
};

/// c_g |g> + c_e |e>.
class AtomState {
 public:
  AtomState(Complex c_g, Complex c_e);
  static AtomState ground() { return {1.0, 0.0}; }
  static AtomState excited() { return {0.0, 1.0}; }

  Complex c_g() const { return c_g_; }
  Complex c_e() const { return c_e_; }

 private:
  Complex c_g_;
  Complex c_e_;
};

/// Atomic basis order: index 0 is |e>, index 1 is |g>.
inline constexpr int kExcitedIndex = 0;
inline constexpr int kGroundIndex = 1;

/// Non-fatal notes collected while building states.
struct Diagnostics {
  std::vector<std::string> warnings;
};

struct PauliOps {
  Operator x, y, z, plus, minus;
};

/// Collective spin on the symmetric subspace j = N/2. Index k holds m = j - k.
struct SpinOps {
  Operator x, y, z, plus, minus;
};

Operator annihilation(FockCutoff cutoff);
Operator creation(FockCutoff cutoff);
Operator number_operator(FockCutoff cutoff);
/// a^p (p >= 0).
Operator annihilation_power(FockCutoff cutoff, int p);

PauliOps pauli_ops();
SpinOps collective_spin(int n_atoms);

/// (a e^{-i theta} + a^dag e^{i theta}) / sqrt(2).
Operator quadrature(double theta, FockCutoff cutoff);

Ket fock_state(int n, FockCutoff cutoff);

/// Truncated coherent state, renormalized. Deficit above the warning threshold is
/// reported through `diag`; above the hard threshold a TruncationError is thrown.
Ket coherent_state(Complex alpha, FockCutoff cutoff, Diagnostics* diag = nullptr);

/// 1 - sum_{n<d} |c_n|^2 before renormalization.
double coherent_truncation_deficit(Complex alpha, FockCutoff cutoff);

Ket atom_ket(const AtomState& s);
/// |N/2, -N/2>.
Ket dicke_lowest(int n_atoms);

/// field (x) atom.
Ket product_state(const Ket& field, const Ket& atom);

/// Lifts a field operator to field (x) atom.
Operator on_field(const Operator& field_op, std::size_t atom_dim);
/// Lifts an atomic operator to field (x) atom.
Operator on_atom(const Operator& atom_op, std::size_t field_dim);

}  // namespace iimp
