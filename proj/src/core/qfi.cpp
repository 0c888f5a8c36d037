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

#include "iimp/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "iimp/errors.hpp"
#include "iimp/evolution.hpp"
#include "iimp/policy.hpp"

namespace iimp {

const char* to_string(QfiMethod m) {
  switch (m) {
    case QfiMethod::FiniteDifference: return "finite-difference";
    case QfiMethod::ShortTimeLimit: return "short-time-limit";
    case QfiMethod::Indirect: return "indirect";
  }
  return "?";
}

namespace {

void require_g(const std::string& lambda) {
  if (lambda != "g") throw ParameterError("only the coupling g is supported as a QFI parameter, got '" + lambda + "'");
}

void require_dim(const ModelParams& params, const Ket& psi) {
  if (psi.dim() != params.dim()) throw ShapeError("state dimension does not match the model");
}

Vector evolved(const ModelParams& params, double g, const Vector& psi0, double t) {
  ModelParams p = params;
  p.g = g;
  return Propagator(build_hamiltonian(p)).evolve(psi0, t);
}

Vector align(const Vector& psi, const Vector& ref) {
  const Complex ov = ref.dot(psi);
  if (std::abs(ov) == 0.0) return psi;
  return psi * (std::conj(ov) / std::abs(ov));
}

Vector central_difference(const ModelParams& params, const Vector& psi0, const Vector& center,
                          double t, double h) {
  const Vector plus = align(evolved(params, params.g + h, psi0, t), center);
  const Vector minus = align(evolved(params, params.g - h, psi0, t), center);
  return (plus - minus) / (2.0 * h);
}

}  // namespace

Vector d_lambda_state(const ModelParams& params, const Ket& psi0, double t, double h,
                      const std::string& lambda, bool check_step) {
  require_g(lambda);
  params.validate();
  require_dim(params, psi0);
  if (h < 0.0) throw ParameterError("finite-difference step must be positive");
  if (h == 0.0) h = policy::qfi_step_scale * std::max(1.0, std::abs(params.g));
  if (t == 0.0) return Vector::Zero(static_cast<Eigen::Index>(params.dim()));

  const Vector center = evolved(params, params.g, psi0.vector(), t);
  Vector d = central_difference(params, psi0.vector(), center, t, h);
  if (check_step) {
    const Vector d_half = central_difference(params, psi0.vector(), center, t, 0.5 * h);
    const double change = (d - d_half).norm();
    const double scale = std::max(1.0, d.norm()) * std::max(1.0, t * t * t);
    if (change > policy::qfi_step_check_factor * h * h * scale) {
      std::ostringstream os;
      os << "d/dg step h = " << h << " is not in the O(h^2) regime: halving changed the result by "
         << change;
      throw StepError(os.str());
    }
  }
  return d;
}

QfiResult qfi_pure(const ModelParams& params, const Ket& psi0, double t, double h,
                   const std::string& lambda) {
  require_g(lambda);
  params.validate();
  require_dim(params, psi0);
  QfiResult r;
  r.lambda_name = lambda;
  r.t = t;
  r.method = QfiMethod::FiniteDifference;
  if (t == 0.0) return r;
  const Vector psi = evolved(params, params.g, psi0.vector(), t);
  const Vector d = d_lambda_state(params, psi0, t, h, lambda);
  r.value = 4.0 * (d.squaredNorm() - std::norm(psi.dot(d)));
  if (r.value < -policy::qfi_nonnegative_tol) {
    throw NumericalError("quantum Fisher information came out negative: " + std::to_string(r.value));
  }
  return r;
}

double short_time_coefficient(const ModelParams& params, const Ket& psi0, const std::string& lambda) {
  require_g(lambda);
  require_dim(params, psi0);
  const Operator dh = dh_dg(params);
  const Complex mean = expectation(psi0, dh);
  const double second = expectation(psi0, dh * dh).real();
  return 4.0 * (second - mean.real() * mean.real() + mean.imag() * mean.imag());
}

double qfi_short_time_ratio(const ModelParams& params, const Ket& psi0, const Ket& psir0,
                            const std::string& lambda) {
  const double den = short_time_coefficient(params, psir0, lambda);
  if (!(std::abs(den) > policy::degenerate_reference_tol)) {
    throw DegenerateReferenceError("reference state has zero variance of dH/dg");
  }
  return short_time_coefficient(params, psi0, lambda) / den;
}

QfiIndirect qfi_indirect(const ModelParams& params, const Ket& psi0, const Ket& psir0, double t0,
                         double h, const std::string& lambda) {
  require_g(lambda);
  if (!(t0 > 0.0)) throw ParameterError("indirect QFI needs t0 > 0");
  require_dim(params, psi0);
  require_dim(params, psir0);
  auto prop = std::make_shared<const Propagator>(build_hamiltonian(params));
  const Operator inv = atomic_inversion(params);
  const double dt = ExpectationChange(prop, psi0.vector(), inv).value(t0);
  const double dr = ExpectationChange(prop, psir0.vector(), inv).value(t0);
  if (dr == 0.0) throw DegenerateReferenceError("reference inversion does not change at t0");

  QfiIndirect out;
  out.response_ratio = dt / dr;
  out.reference_qfi = qfi_pure(params, psir0, t0, h, lambda).value;
  out.direct = qfi_pure(params, psi0, t0, h, lambda).value;
  out.indirect.lambda_name = lambda;
  out.indirect.t = t0;
  out.indirect.method = QfiMethod::Indirect;
  out.indirect.value = out.response_ratio * out.reference_qfi;
  return out;
}

}  // namespace iimp
