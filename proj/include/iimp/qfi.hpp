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
#include "iimp/models.hpp"

namespace iimp {

enum class QfiMethod { FiniteDifference, ShortTimeLimit, Indirect };

const char* to_string(QfiMethod m);

struct QfiResult {
  std::string lambda_name = "g";
  double t = 0.0;
  double value = 0.0;
  QfiMethod method = QfiMethod::FiniteDifference;
};

/// Central difference (|Psi_{g+h}(t)> - |Psi_{g-h}(t)>) / 2h after aligning the
/// phase of each evolved state to |Psi_g(t)>. h = 0 selects the policy default.
/// With `check_step`, the result is recomputed at h/2 and a StepError is raised
/// when the two differ by more than qfi_step_check_factor * h^2 * scale.
Vector d_lambda_state(const ModelParams& params, const Ket& psi0, double t, double h = 0.0,
                      const std::string& lambda = "g", bool check_step = true);

/// 4 [<dPsi|dPsi> - |<Psi|dPsi>|^2].
QfiResult qfi_pure(const ModelParams& params, const Ket& psi0, double t, double h = 0.0,
                   const std::string& lambda = "g");

/// 4 [<dH^2> - (Re<dH>)^2 + (Im<dH>)^2], the coefficient of t^2 in F(t).
double short_time_coefficient(const ModelParams& params, const Ket& psi0,
                              const std::string& lambda = "g");

/// Var_target(dH/dg) / Var_reference(dH/dg).
double qfi_short_time_ratio(const ModelParams& params, const Ket& psi0, const Ket& psir0,
                            const std::string& lambda = "g");

struct QfiIndirect {
  QfiResult indirect;
  double direct = 0.0;           // qfi_pure of the target at t0
  double reference_qfi = 0.0;    // qfi_pure of the reference at t0
  double response_ratio = 0.0;   // Delta<inversion> target / reference at t0
};

/// Reference QFI scaled by the measured atomic-inversion response ratio at t0.
QfiIndirect qfi_indirect(const ModelParams& params, const Ket& psi0, const Ket& psir0, double t0,
                         double h = 0.0, const std::string& lambda = "g");

}  // namespace iimp
