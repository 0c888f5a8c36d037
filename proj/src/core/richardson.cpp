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

#include "iimp/richardson.hpp"

#include <cmath>

#include "iimp/errors.hpp"

namespace iimp {

Extrapolation richardson(const std::vector<double>& samples, double step_ratio,
                         const std::vector<int>& exponents) {
  const std::size_t levels = samples.size();
  if (levels < 2) throw ParameterError("richardson needs at least two samples");
  if (exponents.size() + 1 < levels) throw ParameterError("richardson: not enough exponents");
  if (!(step_ratio > 1.0)) throw ParameterError("richardson: step ratio must exceed 1");

  std::vector<double> prev = samples;
  double amplification = 1.0;
  double increment = 0.0;
  for (std::size_t m = 1; m < levels; ++m) {
    const double f = std::pow(step_ratio, exponents[m - 1]) - 1.0;
    std::vector<double> cur(levels - m);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      cur[k] = prev[k + 1] + (prev[k + 1] - prev[k]) / f;
    }
    amplification *= (f + 2.0) / f;
    if (m == levels - 1) increment = std::abs(cur.back() - prev.back());
    prev = std::move(cur);
  }
  return {prev.back(), increment, amplification};
}

}  // namespace iimp
