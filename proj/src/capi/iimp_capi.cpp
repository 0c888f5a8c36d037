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

#include "iimp/iimp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "iimp/errors.hpp"
#include "iimp/experiments.hpp"
#include "iimp/measurement.hpp"
#include "iimp/qfi.hpp"

struct iimp_model {
  iimp::ModelParams params;
};

struct iimp_state {
  iimp::Ket ket;
};

struct iimp_operator {
  iimp::Operator op;
};

namespace {

thread_local std::string g_last_error;

iimp_status fail(iimp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
iimp_status guard(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const iimp::Error& e) {
    return fail(static_cast<iimp_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(IIMP_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(IIMP_ERR_SIZING, "out of memory");
  } catch (const std::exception& e) {
    return fail(IIMP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IIMP_ERR_INTERNAL, "unknown error");
  }
}

iimp_status null_arg(const char* name) {
  return fail(IIMP_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* iimp_version(void) { return "0.1.0"; }

const char* iimp_status_string(iimp_status status) {
  switch (status) {
    case IIMP_OK:
      return "ok";
    case IIMP_CHECKS_FAILED:
      return "checks failed";
    case IIMP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case IIMP_ERR_INTERNAL:
      return "internal error";
    default:
      if (status >= IIMP_ERR_SHAPE && status <= IIMP_ERR_IO) {
        return iimp::to_string(static_cast<iimp::ErrorCode>(status));
      }
      return "unknown status";
  }
}

const char* iimp_last_error(void) { return g_last_error.c_str(); }

void iimp_string_free(char* s) { std::free(s); }

iimp_status iimp_model_create(const char* json, iimp_model** out) {
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    auto m = std::make_unique<iimp_model>();
    m->params = iimp::parse_model(iimp::Json::parse(json));
    *out = m.release();
    return IIMP_OK;
  });
}

void iimp_model_free(iimp_model* model) { delete model; }

iimp_status iimp_model_dim(const iimp_model* model, size_t* dim) {
  if (model == nullptr) return null_arg("model");
  if (dim == nullptr) return null_arg("dim");
  *dim = model->params.dim();
  return IIMP_OK;
}

iimp_status iimp_model_hamiltonian(const iimp_model* model, iimp_operator** out) {
  if (model == nullptr) return null_arg("model");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    *out = new iimp_operator{iimp::build_hamiltonian(model->params)};
    return IIMP_OK;
  });
}

iimp_status iimp_model_observable(const iimp_model* model, const char* name, iimp_operator** out) {
  if (model == nullptr) return null_arg("model");
  if (name == nullptr) return null_arg("name");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    const iimp::Observable o = iimp::parse_observable(name);
    *out = new iimp_operator{iimp::observable_operator(o, model->params)};
    return IIMP_OK;
  });
}

iimp_status iimp_state_create(const iimp_model* model, const char* json, iimp_state** out) {
  if (model == nullptr) return null_arg("model");
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    const iimp::StateSpec s = iimp::parse_state(iimp::Json::parse(json), model->params);
    *out = new iimp_state{s.full};
    return IIMP_OK;
  });
}

iimp_status iimp_state_from_amplitudes(size_t dim, const double* re, const double* im,
                                       iimp_state** out) {
  if (re == nullptr) return null_arg("re");
  if (out == nullptr) return null_arg("out");
  if (dim == 0) return fail(IIMP_ERR_SHAPE, "state dimension must be positive");
  return guard([&] {
    iimp::Vector v(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) {
      v(static_cast<Eigen::Index>(i)) = iimp::Complex(re[i], im != nullptr ? im[i] : 0.0);
    }
    *out = new iimp_state{iimp::Ket::normalized(v)};
    return IIMP_OK;
  });
}

void iimp_state_free(iimp_state* state) { delete state; }

iimp_status iimp_state_dim(const iimp_state* state, size_t* dim) {
  if (state == nullptr) return null_arg("state");
  if (dim == nullptr) return null_arg("dim");
  *dim = state->ket.dim();
  return IIMP_OK;
}

iimp_status iimp_state_amplitude(const iimp_state* state, size_t i, double* re, double* im) {
  if (state == nullptr) return null_arg("state");
  if (i >= state->ket.dim()) return fail(IIMP_ERR_SHAPE, "amplitude index out of range");
  const iimp::Complex c = state->ket[i];
  if (re != nullptr) *re = c.real();
  if (im != nullptr) *im = c.imag();
  return IIMP_OK;
}

void iimp_operator_free(iimp_operator* op) { delete op; }

iimp_status iimp_operator_dim(const iimp_operator* op, size_t* dim) {
  if (op == nullptr) return null_arg("op");
  if (dim == nullptr) return null_arg("dim");
  *dim = op->op.dim();
  return IIMP_OK;
}

iimp_status iimp_operator_entry(const iimp_operator* op, size_t i, size_t j, double* re,
                                double* im) {
  if (op == nullptr) return null_arg("op");
  if (i >= op->op.dim() || j >= op->op.dim()) {
    return fail(IIMP_ERR_SHAPE, "operator index out of range");
  }
  const iimp::Complex c = op->op(i, j);
  if (re != nullptr) *re = c.real();
  if (im != nullptr) *im = c.imag();
  return IIMP_OK;
}

iimp_status iimp_expectation(const iimp_operator* op, const iimp_state* state, double* out) {
  if (op == nullptr) return null_arg("op");
  if (state == nullptr) return null_arg("state");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    *out = iimp::expectation(state->ket, op->op).real();
    return IIMP_OK;
  });
}

iimp_status iimp_delta(const iimp_operator* h, const iimp_operator* a, const iimp_state* state,
                       const double* times, size_t n, double* out) {
  if (h == nullptr) return null_arg("h");
  if (a == nullptr) return null_arg("a");
  if (state == nullptr) return null_arg("state");
  if (n > 0 && (times == nullptr || out == nullptr)) return null_arg("times/out");
  return guard([&] {
    const std::vector<double> t(times, times + n);
    const iimp::Trajectory tr = iimp::delta_trajectory(h->op, state->ket, a->op, t);
    std::copy(tr.values.begin(), tr.values.end(), out);
    return IIMP_OK;
  });
}

iimp_status iimp_detect_order(const iimp_operator* h, const iimp_operator* a,
                              const iimp_state* target, const iimp_state* reference,
                              int max_order, int* order) {
  if (h == nullptr) return null_arg("h");
  if (a == nullptr) return null_arg("a");
  if (target == nullptr) return null_arg("target");
  if (reference == nullptr) return null_arg("reference");
  if (order == nullptr) return null_arg("order");
  return guard([&] {
    *order = iimp::detect_order(h->op, a->op, target->ket, reference->ket, max_order);
    return IIMP_OK;
  });
}

iimp_status iimp_indirect_estimate(const iimp_operator* h, const iimp_operator* a,
                                   const iimp_state* target, const iimp_state* reference,
                                   const double* reference_value, iimp_estimate* out) {
  if (h == nullptr) return null_arg("h");
  if (a == nullptr) return null_arg("a");
  if (target == nullptr) return null_arg("target");
  if (reference == nullptr) return null_arg("reference");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    std::optional<double> rv;
    if (reference_value != nullptr) rv = *reference_value;
    const iimp::IimpResult r = iimp::indirect_estimate(h->op, a->op, target->ket, reference->ket, rv);
    *out = iimp_estimate{r.order_n,         r.ratio_exact,     r.ratio_numeric,
                         r.ratio_numeric_error, r.reference_value, r.estimate};
    return IIMP_OK;
  });
}

iimp_status iimp_qfi(const iimp_model* model, const iimp_state* state, double t, double* out) {
  if (model == nullptr) return null_arg("model");
  if (state == nullptr) return null_arg("state");
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    *out = iimp::qfi_pure(model->params, state->ket, t).value;
    return IIMP_OK;
  });
}

iimp_status iimp_run_experiment(const char* experiment, const char* config_path,
                                const char* out_dir, int cutoff_check, uint64_t seed,
                                char** summary_json) {
  if (experiment == nullptr) return null_arg("experiment");
  return guard([&] {
    const std::string exp(experiment);
    iimp::Json config = iimp::Json::object();
    if (config_path != nullptr) {
      config = iimp::load_config(config_path);
    } else if (exp != "validate") {
      throw iimp::ConfigError("a config file is required for '" + exp + "'");
    }
    iimp::RunOptions opts;
    if (out_dir != nullptr) opts.out_dir = out_dir;
    opts.cutoff_check = cutoff_check != 0;
    opts.seed = seed;
    const iimp::RunOutcome r = iimp::run_experiment(exp, config, opts);
    if (summary_json != nullptr) *summary_json = dup_string(r.summary.dump(2));
    return r.passed ? IIMP_OK : IIMP_CHECKS_FAILED;
  });
}

}  // extern "C"
