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

#include <memory>
#include <string>
#include <vector>

#include "iimp/hilbert.hpp"
#include "iimp/models.hpp"

namespace iimp {

struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;  // <A>(t) - <A>(0)
  std::string label;
  double initial_mean = 0.0;
};

Ket evolve(const Operator& h, const Ket& psi0, double t);

/// Delta<A>(t) = Tr[rho(t) A] - Tr[rho(0) A] evaluated in the eigenbasis of H.
///
/// With M_jk = rho_kj A_jk (eigenbasis entries) and w_jk = E_j - E_k,
///   Delta(t) = 2 sum_{j<k} [ -2 Re(M_jk) sin^2(w_jk t / 2) - Im(M_jk) sin(w_jk t) ],
/// which has no cancellation against <A>(0) and stays accurate for tiny t.
class ExpectationChange {
 public:
  ExpectationChange(std::shared_ptr<const Propagator> prop, const Vector& psi0, const Operator& a);
  ExpectationChange(std::shared_ptr<const Propagator> prop, const Matrix& rho0, const Operator& a);

  double value(double t) const;
  /// Roundoff scale of value(t).
  double noise(double t) const;
  double initial_mean() const { return initial_mean_; }
  /// Largest |E_j - E_k| over pairs with a nonzero coupling term.
  double active_spread() const;

 private:
  void build(const Matrix& rho_eig, const Matrix& a_eig);

  std::shared_ptr<const Propagator> prop_;
  std::vector<double> omega_;
  std::vector<double> re_;
  std::vector<double> im_;
  double initial_mean_ = 0.0;
};

Trajectory delta_trajectory(const Operator& h, const Ket& psi0, const Operator& a,
                            const std::vector<double>& times);
Trajectory delta_trajectory_mixed(const Operator& h, const DensityMatrix& rho0, const Operator& a,
                                  const std::vector<double>& times);

/// Sign convention for the |g,n> diagonal entry D of a JC block.
enum class BlockConvention { AsDerived, AsPrinted };

/// 2x2 JC block on (|e,n-p>, |g,n>).
struct JcBlockCoefficients {
  int n = 0;
  double A = 0.0, B = 0.0, D = 0.0;
  double x1 = 0.0, x2 = 0.0;
  double y1 = 0.0, y2 = 0.0, z1 = 0.0;
  bool degenerate = false;  // x1 == x2, only possible with B == 0
};

/// ParameterError if the model is not JC, BlockAbsent (ParameterError) if n < p.
JcBlockCoefficients jc_block_coefficients(int n, const ModelParams& params,
                                          BlockConvention conv = BlockConvention::AsDerived);

/// Diagonal energy of |g,n> under the chosen convention.
double jc_ground_energy(int n, const ModelParams& params, BlockConvention conv);

struct JcAmplitudes {
  std::vector<Complex> c_e;  // amplitude on |e,n-p> per initial n (0 when n < p)
  std::vector<Complex> c_g;  // amplitude on |g,n>
};

/// Per-block amplitudes at time t for an atom starting in |g>; c[n] = <n|field(0)>.
JcAmplitudes jc_analytic_amplitudes(int levels, const ModelParams& params, double t,
                                    BlockConvention conv = BlockConvention::AsDerived);

/// Full analytic state on the truncated field (x) atom space.
Ket jc_analytic_state(const std::vector<Complex>& c, const ModelParams& params, double t,
                      BlockConvention conv = BlockConvention::AsDerived);

/// Delta<sigma_z>(target) / Delta<sigma_z>(reference) from the closed form.
double jc_analytic_sigma_z_ratio(const std::vector<Complex>& c, const std::vector<Complex>& d,
                                 const ModelParams& params, double t,
                                 BlockConvention conv = BlockConvention::AsDerived);

/// t -> 0 limit: sum |c_n|^2 n!/(n-p)! over the same sum for d.
double jc_sigma_z_ratio_limit(const std::vector<Complex>& c, const std::vector<Complex>& d, int p);

/// n!/(n-p)!, zero for n < p.
double falling_factorial(int n, int p);

/// Log-spaced grid of `points` values on [t_min, t_max].
std::vector<double> log_grid(double t_min, double t_max, int points);
std::vector<double> linear_grid(double t_min, double t_max, int points);

}  // namespace iimp
