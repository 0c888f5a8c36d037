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

#include <vector>

namespace iimp {

struct Extrapolation {
  double value = 0.0;
  /// |T[L-1][L-1] - T[L-1][L-2]|
  double increment = 0.0;
  /// Bound on how much sample noise is magnified by the tableau.
  double amplification = 1.0;
};

/// Richardson tableau for samples f(h_k), h_k = h_0 / step_ratio^k, assuming
/// f(h) = f(0) + sum_m c_m h^{exponents[m]}. Uses as many exponents as needed
/// (samples.size() - 1); ParameterError if too few are supplied.
Extrapolation richardson(const std::vector<double>& samples, double step_ratio,
                         const std::vector<int>& exponents);

}  // namespace iimp
