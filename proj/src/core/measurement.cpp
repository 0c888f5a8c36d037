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

#include "iimp/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "iimp/errors.hpp"
#include "iimp/operators.hpp"
#include "iimp/richardson.hpp"

namespace iimp {

namespace {

constexpr double kSupportWeight = 1e-14;

bool is_real(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return m.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

bool is_real(const Vector& v) {
  return v.imag().cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, v.cwiseAbs().maxCoeff());
}

double support_spread(const Propagator& prop, const std::vector<RealVector>& weights) {
  const RealVector& e = prop.energies();
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (const RealVector& w : weights) {
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      if (w(k) <= kSupportWeight) continue;
      if (!any) {
        lo = hi = e(k);
        any = true;
      }
      lo = std::min(lo, e(k));
      hi = std::max(hi, e(k));
    }
  }
  return hi - lo;
}

RealVector eigen_weights(const Propagator& prop, const Vector& psi) {
  return prop.to_eigenbasis(psi).cwiseAbs2();
}

RealVector eigen_weights(const Propagator& prop, const Matrix& rho) {
  return prop.to_eigenbasis_operator(rho).diagonal().real();
}

using Expect = std::function<Complex(const Operator&)>;

int detect_order_impl(const Operator& h, const Operator& a, const Expect& target,
                      const Expect& reference, int max_n) {
  if (max_n < 1) throw ParameterError("max_n must be at least 1");
  const double root_dim = std::sqrt(static_cast<double>(h.dim()));
  Operator x = a;
  for (int n = 1; n <= max_n; ++n) {
    x = nested_commutator(h, x, 1);
    const double thr = policy::order_detection_eps * x.matrix().norm() / root_dim;
    const bool t_on = std::abs(target(x)) > thr;
    const bool r_on = std::abs(reference(x)) > thr;
    if (t_on && r_on) return n;
    if (t_on != r_on) {
      const Side vanished = t_on ? Side::Reference : Side::Target;
      std::ostringstream os;
      os << (vanished == Side::Target ? "target" : "reference")
         << " state has a vanishing order-" << n << " nested commutator expectation while the "
         << (vanished == Side::Target ? "reference" : "target") << " does not";
      throw OrderMismatchError(vanished, n, os.str());
    }
  }
  throw UndetectableOrderError("no nonzero nested commutator expectation up to order " +
                               std::to_string(max_n));
}

double exact_ratio_impl(const Operator& h, const Operator& a, const Expect& target,
                        const Expect& reference, int* order) {
  const int n = detect_order_impl(h, a, target, reference, policy::default_max_order);
  const Operator x = nested_commutator(h, a, n);
  if (order != nullptr) *order = n;
  return target(x).real() / reference(x).real();
}

}  // namespace

int detect_order(const Operator& h, const Operator& a, const Ket& psi0, const Ket& psir0,
                 int max_n) {
  return detect_order_impl(
      h, a, [&](const Operator& x) { return expectation(psi0, x); },
      [&](const Operator& x) { return expectation(psir0, x); }, max_n);
}

int detect_order_mixed(const Operator& h, const Operator& a, const DensityMatrix& rho0,
                       const DensityMatrix& rhor0, int max_n) {
  return detect_order_impl(
      h, a, [&](const Operator& x) { return expectation_mixed(rho0, x); },
      [&](const Operator& x) { return expectation_mixed(rhor0, x); }, max_n);
}

double ratio_limit_exact(const Operator& h, const Operator& a, const Ket& psi0, const Ket& psir0) {
  return exact_ratio_impl(
      h, a, [&](const Operator& x) { return expectation(psi0, x); },
      [&](const Operator& x) { return expectation(psir0, x); }, nullptr);
}

double ratio_limit_exact_mixed(const Operator& h, const Operator& a, const DensityMatrix& rho0,
                               const DensityMatrix& rhor0) {
  return exact_ratio_impl(
      h, a, [&](const Operator& x) { return expectation_mixed(rho0, x); },
      [&](const Operator& x) { return expectation_mixed(rhor0, x); }, nullptr);
}

RatioEstimate extrapolate_ratio(const ExpectationChange& target, const ExpectationChange& reference,
                                double spread, bool real_problem, const RatioOptions& opts) {
  if (opts.levels < policy::min_levels) {
    throw ParameterError("ratio extrapolation needs at least " +
                         std::to_string(policy::min_levels) + " levels");
  }
  RatioEstimate out;
  out.spread = spread;
  if (opts.t0 > 0.0) {
    if (opts.t0 * spread > policy::t0_max_product) {
      std::ostringstream os;
      os << "t0 = " << opts.t0 << " is too large for energy spread " << spread
         << " (t0 * spread must be <= " << policy::t0_max_product << ")";
      throw ParameterError(os.str());
    }
    out.t0 = opts.t0;
  } else if (opts.t0 < 0.0) {
    throw ParameterError("t0 must be positive");
  } else {
    out.t0 = policy::t0_scale / (spread > 0.0 ? spread : 1.0);
  }
  out.even = opts.parity == Parity::Even || (opts.parity == Parity::Auto && real_problem);

  const auto levels = static_cast<std::size_t>(opts.levels);
  out.times.resize(levels);
  out.samples.resize(levels);
  double noise = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    const double t = out.t0 * std::ldexp(1.0, -static_cast<int>(k));
    const double dt = target.value(t);
    const double dr = reference.value(t);
    out.times[k] = t;
    if (k + 1 == levels) {
      const double floor = policy::underflow_factor * policy::machine_eps *
                           std::max(1.0, std::abs(reference.initial_mean()));
      if (!(std::abs(dr) >= floor)) {
        std::ostringstream os;
        os << "reference change " << std::abs(dr) << " at t = " << t
           << " is below the underflow floor " << floor;
        throw UnderflowError(os.str());
      }
    }
    out.samples[k] = dt / dr;
    const double rel = target.noise(t) / std::max(std::abs(dt), 1e-300) +
                       reference.noise(t) / std::abs(dr);
    noise = std::max(noise, std::abs(out.samples[k]) * std::min(rel, 1.0));
  }
  std::vector<int> exponents;
  for (std::size_t m = 1; m < levels; ++m) {
    exponents.push_back(out.even ? static_cast<int>(2 * m) : static_cast<int>(m));
  }
  const Extrapolation ex = richardson(out.samples, 2.0, exponents);
  out.ratio = ex.value;
  out.error = ex.increment + ex.amplification * noise;
  return out;
}

RatioEstimate ratio_limit_numeric(const Operator& h, const Operator& a, const Ket& psi0,
                                  const Ket& psir0, const RatioOptions& opts) {
  auto prop = std::make_shared<const Propagator>(h);
  const ExpectationChange target(prop, psi0.vector(), a);
  const ExpectationChange reference(prop, psir0.vector(), a);
  const double spread =
      support_spread(*prop, {eigen_weights(*prop, psi0.vector()), eigen_weights(*prop, psir0.vector())});
  const bool real_problem = is_real(h.matrix()) && is_real(a.matrix()) && is_real(psi0.vector()) &&
                            is_real(psir0.vector());
  return extrapolate_ratio(target, reference, spread, real_problem, opts);
}

RatioEstimate ratio_limit_numeric_mixed(const Operator& h, const Operator& a,
                                        const DensityMatrix& rho0, const DensityMatrix& rhor0,
                                        const RatioOptions& opts) {
  auto prop = std::make_shared<const Propagator>(h);
  const ExpectationChange target(prop, rho0.matrix(), a);
  const ExpectationChange reference(prop, rhor0.matrix(), a);
  const double spread = support_spread(
      *prop, {eigen_weights(*prop, rho0.matrix()), eigen_weights(*prop, rhor0.matrix())});
  const bool real_problem = is_real(h.matrix()) && is_real(a.matrix()) && is_real(rho0.matrix()) &&
                            is_real(rhor0.matrix());
  return extrapolate_ratio(target, reference, spread, real_problem, opts);
}

namespace {

IimpResult assemble(int n, double exact, const RatioEstimate& num, double computed_reference,
                    std::optional<double> reference_value) {
  const double ref = reference_value.value_or(computed_reference);
  if (!(std::abs(ref) >= policy::degenerate_reference_tol)) {
    throw DegenerateReferenceError("reference value " + std::to_string(ref) +
                                   " is too small to calibrate against");
  }
  IimpResult r;
  r.order_n = n;
  r.ratio_exact = exact;
  r.ratio_numeric = num.ratio;
  r.ratio_numeric_error = num.error;
  r.reference_value = ref;
  r.estimate = ref * num.ratio;
  return r;
}

}  // namespace

IimpResult indirect_estimate(const Operator& h, const Operator& a, const Ket& psi0,
                             const Ket& psir0, std::optional<double> reference_value,
                             const RatioOptions& opts) {
  const int n = detect_order(h, a, psi0, psir0);
  const Operator x = nested_commutator(h, a, n);
  const double vt = expectation(psi0, x).real();
  const double vr = expectation(psir0, x).real();
  const RatioEstimate num = ratio_limit_numeric(h, a, psi0, psir0, opts);
  return assemble(n, vt / vr, num, vr, reference_value);
}

IimpResult indirect_estimate_mixed(const Operator& h, const Operator& a,
                                   const DensityMatrix& rho0, const DensityMatrix& rhor0,
                                   std::optional<double> reference_value,
                                   const RatioOptions& opts) {
  const int n = detect_order_mixed(h, a, rho0, rhor0);
  const Operator x = nested_commutator(h, a, n);
  const double vt = expectation_mixed(rho0, x).real();
  const double vr = expectation_mixed(rhor0, x).real();
  const RatioEstimate num = ratio_limit_numeric_mixed(h, a, rho0, rhor0, opts);
  return assemble(n, vt / vr, num, vr, reference_value);
}

namespace {

double stencil(const ExpectationChange& f, int n, double h) {
  switch (n) {
    case 1:
      return (f.value(-2 * h) - 8 * f.value(-h) + 8 * f.value(h) - f.value(2 * h)) / (12 * h);
    case 2:
      return (-f.value(-2 * h) + 16 * f.value(-h) - 30 * f.value(0.0) + 16 * f.value(h) -
              f.value(2 * h)) /
             (12 * h * h);
    case 3:
      return (-f.value(3 * h) + 8 * f.value(2 * h) - 13 * f.value(h) + 13 * f.value(-h) -
              8 * f.value(-2 * h) + f.value(-3 * h)) /
             (8 * h * h * h);
    default:
      throw ParameterError("finite-difference stencils exist for n = 1, 2, 3 only");
  }
}

}  // namespace

DerivativeCheck derivative_commutator_check(const Operator& h, const Operator& a, const Ket& psi0,
                                            int n, double dt) {
  if (n < 1 || n > 3) throw ParameterError("finite-difference stencils exist for n = 1, 2, 3 only");
  if (!(dt > 0.0)) throw ParameterError("finite-difference step must be positive");
  auto prop = std::make_shared<const Propagator>(h);
  const ExpectationChange f(prop, psi0.vector(), a);
  DerivativeCheck out;
  out.n = n;
  out.dt = dt;
  out.step_warning = dt < policy::min_fd_step;
  out.commutator_value = expectation(psi0, nested_commutator(h, a, n)).real();
  out.fd_value = stencil(f, n, dt);
  out.fd_value_half = stencil(f, n, 0.5 * dt);
  out.abs_diff = std::abs(out.fd_value - out.commutator_value);
  out.abs_diff_half = std::abs(out.fd_value_half - out.commutator_value);
  return out;
}

Ket quadrature_probe(double theta) {
  const double s = 1.0 / std::sqrt(2.0);
  return atom_ket(AtomState(s, -I * std::exp(I * theta) * s));
}

IimpResult quadrature_estimate(double theta, const ModelParams& params, const Ket& field,
                               const Ket& reference_field, const RatioOptions& opts) {
  if (params.kind != ModelKind::JC || params.p != 1) {
    throw ParameterError("quadrature estimation uses a JC p = 1 probe");
  }
  params.validate();
  const FockCutoff fc(params.cutoff);
  if (field.dim() != static_cast<std::size_t>(fc.d) ||
      reference_field.dim() != static_cast<std::size_t>(fc.d)) {
    throw ShapeError("field state dimension does not match the model cutoff");
  }
  const Ket probe = quadrature_probe(theta);
  const Ket target = product_state(field, probe);
  const Ket reference = product_state(reference_field, probe);

  // i(a^dag sigma_- - sigma_+ a), whose probe-state mean is <X(theta)>/sqrt(2).
  const PauliOps s = pauli_ops();
  const Operator a = annihilation(fc);
  const Operator y = (kron(a.adjoint(), s.minus) - kron(a, s.plus)) * I;
  const double ref_y = expectation(reference, y).real();
  if (!(std::abs(ref_y) >= policy::degenerate_reference_tol)) {
    throw DegenerateReferenceError("reference field has zero quadrature mean at this angle");
  }
  const Operator h = build_hamiltonian(params);
  const Operator sz = atomic_inversion(params);
  IimpResult r = indirect_estimate(h, sz, target, reference, ref_y, opts);
  if (r.order_n != 1) {
    throw OrderMismatchError(Side::Target, r.order_n,
                             "quadrature probe expects a first-order response");
  }
  r.estimate *= std::sqrt(2.0);
  r.reference_value *= std::sqrt(2.0);
  return r;
}

}  // namespace iimp
