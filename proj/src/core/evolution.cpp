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

#include "iimp/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "iimp/errors.hpp"
#include "iimp/policy.hpp"

namespace iimp {

Ket evolve(const Operator& h, const Ket& psi0, double t) {
  const Propagator prop(h);
  return Ket::normalized(prop.evolve(psi0.vector(), t));
}

ExpectationChange::ExpectationChange(std::shared_ptr<const Propagator> prop, const Vector& psi0,
                                     const Operator& a)
    : prop_(std::move(prop)) {
  if (static_cast<std::size_t>(psi0.size()) != prop_->dim() || a.dim() != prop_->dim()) {
    throw ShapeError("expectation change: dimension mismatch");
  }
  const Vector c = prop_->to_eigenbasis(psi0);
  build(c * c.adjoint(), prop_->to_eigenbasis_operator(a.matrix()));
}

ExpectationChange::ExpectationChange(std::shared_ptr<const Propagator> prop, const Matrix& rho0,
                                     const Operator& a)
    : prop_(std::move(prop)) {
  if (static_cast<std::size_t>(rho0.rows()) != prop_->dim() || a.dim() != prop_->dim()) {
    throw ShapeError("expectation change: dimension mismatch");
  }
  build(prop_->to_eigenbasis_operator(rho0), prop_->to_eigenbasis_operator(a.matrix()));
}

void ExpectationChange::build(const Matrix& rho_eig, const Matrix& a_eig) {
  const RealVector& e = prop_->energies();
  const Eigen::Index n = e.size();
  Complex mean = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) mean += rho_eig(j, j) * a_eig(j, j);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const Complex m = rho_eig(k, j) * a_eig(j, k);
      mean += m + std::conj(m);
      if (m == Complex(0.0, 0.0)) continue;
      omega_.push_back(e(j) - e(k));
      re_.push_back(m.real());
      im_.push_back(m.imag());
    }
  }
  initial_mean_ = mean.real();
}

double ExpectationChange::value(double t) const {
  double s = 0.0;
  for (std::size_t q = 0; q < omega_.size(); ++q) {
    const double wt = omega_[q] * t;
    const double sh = std::sin(0.5 * wt);
    s += -2.0 * re_[q] * sh * sh - im_[q] * std::sin(wt);
  }
  return 2.0 * s;
}

double ExpectationChange::noise(double t) const {
  double s = 0.0;
  for (std::size_t q = 0; q < omega_.size(); ++q) {
    // |e^{i w t} - 1| = 2 |sin(w t / 2)|
    s += std::hypot(re_[q], im_[q]) * 2.0 * std::abs(std::sin(0.5 * omega_[q] * t));
  }
  return policy::machine_eps * 2.0 * s;
}

double ExpectationChange::active_spread() const {
  double mmax = 0.0;
  for (std::size_t q = 0; q < omega_.size(); ++q) mmax = std::max(mmax, std::hypot(re_[q], im_[q]));
  double w = 0.0;
  for (std::size_t q = 0; q < omega_.size(); ++q) {
    if (std::hypot(re_[q], im_[q]) > 1e-12 * mmax) w = std::max(w, std::abs(omega_[q]));
  }
  return w;
}

namespace {

void check_times(const std::vector<double>& times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || times[k] < 0.0) {
      throw ParameterError("trajectory times must be finite and non-negative");
    }
    if (k > 0 && times[k] < times[k - 1]) throw ParameterError("trajectory times must be sorted");
  }
}

Trajectory sample(const ExpectationChange& dc, const std::vector<double>& times) {
  Trajectory tr;
  tr.times = times;
  tr.values.reserve(times.size());
  for (double t : times) tr.values.push_back(dc.value(t));
  tr.initial_mean = dc.initial_mean();
  return tr;
}

}  // namespace

Trajectory delta_trajectory(const Operator& h, const Ket& psi0, const Operator& a,
                            const std::vector<double>& times) {
  check_times(times);
  auto prop = std::make_shared<const Propagator>(h);
  return sample(ExpectationChange(prop, psi0.vector(), a), times);
}

Trajectory delta_trajectory_mixed(const Operator& h, const DensityMatrix& rho0, const Operator& a,
                                  const std::vector<double>& times) {
  check_times(times);
  auto prop = std::make_shared<const Propagator>(h);
  return sample(ExpectationChange(prop, rho0.matrix(), a), times);
}

double falling_factorial(int n, int p) {
  if (n < p) return 0.0;
  double f = 1.0;
  for (int k = n - p + 1; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

double jc_ground_energy(int n, const ModelParams& params, BlockConvention conv) {
  const double nd = static_cast<double>(n);
  const double kerr = 0.5 * params.U * nd * (nd - 1.0);
  return -0.5 * params.omega_0 + params.omega_a * nd +
         (conv == BlockConvention::AsDerived ? kerr : -kerr) - params.gamma * nd;
}

JcBlockCoefficients jc_block_coefficients(int n, const ModelParams& params, BlockConvention conv) {
  if (params.kind != ModelKind::JC) throw ParameterError("closed-form blocks exist only for JC");
  params.validate();
  if (n < params.p) {
    throw ParameterError("block absent: |g," + std::to_string(n) + "> is stationary for p = " +
                         std::to_string(params.p));
  }
  JcBlockCoefficients b;
  b.n = n;
  const double m = static_cast<double>(n - params.p);
  b.A = 0.5 * params.omega_0 + params.omega_a * m + 0.5 * params.U * m * (m - 1.0) +
        params.gamma * m;
  b.B = params.g * std::sqrt(falling_factorial(n, params.p));
  b.D = jc_ground_energy(n, params, conv);
  const double root = std::sqrt((b.A - b.D) * (b.A - b.D) + 4.0 * b.B * b.B);
  b.x1 = 0.5 * ((b.A + b.D) - root);
  b.x2 = 0.5 * ((b.A + b.D) + root);
  if (root <= policy::block_root_tol * std::max(1.0, std::abs(b.A) + std::abs(b.D))) {
    b.degenerate = true;
    b.y1 = 1.0;
    b.y2 = 0.0;
    b.z1 = 0.0;
    return b;
  }
  b.y1 = (b.A - b.x1) / root;
  b.y2 = (b.A - b.x2) / root;
  b.z1 = b.B / root;
  return b;
}

JcAmplitudes jc_analytic_amplitudes(int levels, const ModelParams& params, double t,
                                    BlockConvention conv) {
  if (params.kind != ModelKind::JC) throw ParameterError("closed-form blocks exist only for JC");
  JcAmplitudes out;
  out.c_e.assign(static_cast<std::size_t>(levels), Complex(0.0, 0.0));
  out.c_g.assign(static_cast<std::size_t>(levels), Complex(0.0, 0.0));
  for (int n = 0; n < levels; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (n < params.p) {
      out.c_g[i] = std::exp(-I * (jc_ground_energy(n, params, conv) * t));
      continue;
    }
    const JcBlockCoefficients b = jc_block_coefficients(n, params, conv);
    if (b.degenerate) {
      out.c_g[i] = std::exp(-I * (b.D * t));
      continue;
    }
    out.c_e[i] = b.z1 * Complex(std::cos(b.x2 * t) - std::cos(b.x1 * t),
                                -(std::sin(b.x2 * t) - std::sin(b.x1 * t)));
    out.c_g[i] = b.y1 * std::exp(-I * (b.x1 * t)) - b.y2 * std::exp(-I * (b.x2 * t));
  }
  return out;
}

Ket jc_analytic_state(const std::vector<Complex>& c, const ModelParams& params, double t,
                      BlockConvention conv) {
  params.validate();
  if (c.size() > static_cast<std::size_t>(params.cutoff)) {
    throw ShapeError("more field coefficients than the Fock cutoff");
  }
  const int levels = static_cast<int>(c.size());
  const JcAmplitudes amp = jc_analytic_amplitudes(levels, params, t, conv);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(params.dim()));
  for (int n = 0; n < levels; ++n) {
    const auto i = static_cast<std::size_t>(n);
    v(2 * n + 1) += c[i] * amp.c_g[i];
    if (n >= params.p) v(2 * (n - params.p)) += c[i] * amp.c_e[i];
  }
  return Ket(std::move(v));
}

namespace {

double weighted_moment(const std::vector<Complex>& c, int p) {
  double s = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    s += std::norm(c[n]) * falling_factorial(static_cast<int>(n), p);
  }
  return s;
}

}  // namespace

double jc_sigma_z_ratio_limit(const std::vector<Complex>& c, const std::vector<Complex>& d, int p) {
  const double den = weighted_moment(d, p);
  if (den <= policy::degenerate_reference_tol) {
    throw DegenerateReferenceError("reference has no weight on levels n >= p");
  }
  return weighted_moment(c, p) / den;
}

double jc_analytic_sigma_z_ratio(const std::vector<Complex>& c, const std::vector<Complex>& d,
                                 const ModelParams& params, double t, BlockConvention conv) {
  if (weighted_moment(d, params.p) <= policy::degenerate_reference_tol) {
    throw DegenerateReferenceError("reference has no weight on levels n >= p");
  }
  const int levels = static_cast<int>(std::max(c.size(), d.size()));
  const JcAmplitudes amp = jc_analytic_amplitudes(levels, params, t, conv);
  // Delta<sigma_z> = sum |c_n|^2 * 2|C_e|^2, the stable form of (|C_e|^2 - |C_g|^2) + 1.
  double num = 0.0;
  double den = 0.0;
  for (int n = 0; n < levels; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double pe = 2.0 * std::norm(amp.c_e[i]);
    if (i < c.size()) num += std::norm(c[i]) * pe;
    if (i < d.size()) den += std::norm(d[i]) * pe;
  }
  if (den == 0.0) return std::nan("");
  return num / den;
}

std::vector<double> log_grid(double t_min, double t_max, int points) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points < 2) {
    throw ParameterError("log grid needs 0 < t_min < t_max and at least 2 points");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  const double l0 = std::log(t_min);
  const double l1 = std::log(t_max);
  for (int k = 0; k < points; ++k) {
    out[static_cast<std::size_t>(k)] = std::exp(l0 + (l1 - l0) * k / (points - 1));
  }
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

std::vector<double> linear_grid(double t_min, double t_max, int points) {
  if (t_min < 0.0 || !(t_max > t_min) || points < 2) {
    throw ParameterError("linear grid needs 0 <= t_min < t_max and at least 2 points");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    out[static_cast<std::size_t>(k)] = t_min + (t_max - t_min) * k / (points - 1);
  }
  out.back() = t_max;
  return out;
}

}  // namespace iimp
