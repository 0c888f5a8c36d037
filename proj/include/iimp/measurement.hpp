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

#include <optional>
#include <vector>

#include "iimp/evolution.hpp"
#include "iimp/hilbert.hpp"
#include "iimp/models.hpp"
#include "iimp/policy.hpp"

namespace iimp {

struct IimpResult {
  int order_n = 0;
  double ratio_exact = 0.0;
  double ratio_numeric = 0.0;
  double ratio_numeric_error = 0.0;
  /// reference_value * ratio_numeric
  double estimate = 0.0;
  double reference_value = 0.0;
};

enum class Parity {
  Auto,  // even series when H, A and both states are real, full series otherwise
  Even,
  Full,
};

struct RatioOptions {
  double t0 = 0.0;  // 0 selects t0 = t0_scale / spread
  int levels = policy::default_levels;
  Parity parity = Parity::Auto;
};

struct RatioEstimate {
  double ratio = 0.0;
  double error = 0.0;
  double t0 = 0.0;
  bool even = false;
  /// Energy spread of the joint support, the scale that sets the default t0.
  double spread = 0.0;
  std::vector<double> times;
  std::vector<double> samples;
};

/// Smallest n <= max_n where both <(iH)^{xn}(A)> are nonzero.
int detect_order(const Operator& h, const Operator& a, const Ket& psi0, const Ket& psir0,
                 int max_n = policy::default_max_order);
int detect_order_mixed(const Operator& h, const Operator& a, const DensityMatrix& rho0,
                       const DensityMatrix& rhor0, int max_n = policy::default_max_order);

double ratio_limit_exact(const Operator& h, const Operator& a, const Ket& psi0, const Ket& psir0);
double ratio_limit_exact_mixed(const Operator& h, const Operator& a, const DensityMatrix& rho0,
                               const DensityMatrix& rhor0);

/// Richardson extrapolation of Delta_target / Delta_reference on t_k = t0 / 2^k.
RatioEstimate ratio_limit_numeric(const Operator& h, const Operator& a, const Ket& psi0,
                                  const Ket& psir0, const RatioOptions& opts = {});
RatioEstimate ratio_limit_numeric_mixed(const Operator& h, const Operator& a,
                                        const DensityMatrix& rho0, const DensityMatrix& rhor0,
                                        const RatioOptions& opts = {});

/// Lower-level form sharing one eigendecomposition. `real_problem` selects the
/// even series under Parity::Auto.
RatioEstimate extrapolate_ratio(const ExpectationChange& target, const ExpectationChange& reference,
                                double spread, bool real_problem, const RatioOptions& opts);

/// When `reference_value` is empty it is computed from the reference state.
IimpResult indirect_estimate(const Operator& h, const Operator& a, const Ket& psi0,
                             const Ket& psir0, std::optional<double> reference_value = {},
                             const RatioOptions& opts = {});
IimpResult indirect_estimate_mixed(const Operator& h, const Operator& a,
                                   const DensityMatrix& rho0, const DensityMatrix& rhor0,
                                   std::optional<double> reference_value = {},
                                   const RatioOptions& opts = {});

struct DerivativeCheck {
  int n = 0;
  double dt = 0.0;
  double fd_value = 0.0;
  double commutator_value = 0.0;
  double abs_diff = 0.0;
  /// Same stencil at dt / 2.
  double fd_value_half = 0.0;
  double abs_diff_half = 0.0;
  bool step_warning = false;
};

/// Order-4 central stencil for d^n Delta<A>/dt^n at t = 0, n in {1, 2, 3}.
DerivativeCheck derivative_commutator_check(const Operator& h, const Operator& a, const Ket& psi0,
                                            int n, double dt = policy::default_fd_step);

/// Probe atom (|g> - i e^{i theta} |e>)/sqrt(2) used by quadrature_estimate.
Ket quadrature_probe(double theta);

/// Indirect estimate of <X(theta)> of `field` via a JC p = 1 probe atom,
/// calibrated on `reference_field`.
IimpResult quadrature_estimate(double theta, const ModelParams& params, const Ket& field,
                               const Ket& reference_field, const RatioOptions& opts = {});

}  // namespace iimp
