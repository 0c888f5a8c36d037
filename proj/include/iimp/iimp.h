/*
 * Copyright 2026 The iimp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the iimp library. Every fallible call returns an
 * iimp_status; on failure iimp_last_error() holds a message for the
 * calling thread. Handles are opaque and owned by the caller. */

#ifndef IIMP_IIMP_H
#define IIMP_IIMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(IIMP_BUILDING_LIBRARY)
#define IIMP_API __attribute__((visibility("default")))
#else
#define IIMP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iimp_status {
  IIMP_OK = 0,
  IIMP_ERR_SHAPE = 1,
  IIMP_ERR_SIZING = 2,
  IIMP_ERR_NUMERICAL = 3,
  IIMP_ERR_PARAMETER = 4,
  IIMP_ERR_DEGENERATE_REFERENCE = 5,
  IIMP_ERR_UNDETECTABLE_ORDER = 6,
  IIMP_ERR_ORDER_MISMATCH = 7,
  IIMP_ERR_UNDERFLOW = 8,
  IIMP_ERR_STEP = 9,
  IIMP_ERR_TRUNCATION = 10,
  IIMP_ERR_CONFIG = 11,
  IIMP_ERR_IO = 12,
  /* the run finished but at least one of its checks failed */
  IIMP_CHECKS_FAILED = 13,
  IIMP_ERR_INVALID_ARGUMENT = 14,
  IIMP_ERR_INTERNAL = 15
} iimp_status;

typedef struct iimp_model iimp_model;
typedef struct iimp_state iimp_state;
typedef struct iimp_operator iimp_operator;

typedef struct iimp_estimate {
  int order_n;
  double ratio_exact;
  double ratio_numeric;
  double ratio_numeric_error;
  double reference_value;
  double estimate;
} iimp_estimate;

IIMP_API const char* iimp_version(void);
IIMP_API const char* iimp_status_string(iimp_status status);
/* Message of the last failed call on this thread, "" if none. */
IIMP_API const char* iimp_last_error(void);
IIMP_API void iimp_string_free(char* s);

/* Model from a JSON object with the ModelParams field names. */
IIMP_API iimp_status iimp_model_create(const char* json, iimp_model** out);
IIMP_API void iimp_model_free(iimp_model* model);
IIMP_API iimp_status iimp_model_dim(const iimp_model* model, size_t* dim);
IIMP_API iimp_status iimp_model_hamiltonian(const iimp_model* model, iimp_operator** out);
/* name: "sigma_z", "photon_number", "J_z" or "inversion" */
IIMP_API iimp_status iimp_model_observable(const iimp_model* model, const char* name,
                                           iimp_operator** out);

/* State from a JSON state spec (fock, coherent, atom or product). */
IIMP_API iimp_status iimp_state_create(const iimp_model* model, const char* json,
                                       iimp_state** out);
/* Normalized state from raw amplitudes in the composite basis. */
IIMP_API iimp_status iimp_state_from_amplitudes(size_t dim, const double* re, const double* im,
                                                iimp_state** out);
IIMP_API void iimp_state_free(iimp_state* state);
IIMP_API iimp_status iimp_state_dim(const iimp_state* state, size_t* dim);
IIMP_API iimp_status iimp_state_amplitude(const iimp_state* state, size_t i, double* re,
                                          double* im);

IIMP_API void iimp_operator_free(iimp_operator* op);
IIMP_API iimp_status iimp_operator_dim(const iimp_operator* op, size_t* dim);
IIMP_API iimp_status iimp_operator_entry(const iimp_operator* op, size_t i, size_t j, double* re,
                                         double* im);
IIMP_API iimp_status iimp_expectation(const iimp_operator* op, const iimp_state* state,
                                      double* out);

/* <A>(t) - <A>(0) at each of n non-decreasing times. */
IIMP_API iimp_status iimp_delta(const iimp_operator* h, const iimp_operator* a,
                                const iimp_state* state, const double* times, size_t n,
                                double* out);
IIMP_API iimp_status iimp_detect_order(const iimp_operator* h, const iimp_operator* a,
                                       const iimp_state* target, const iimp_state* reference,
                                       int max_order, int* order);
/* reference_value may be NULL to use the reference commutator mean. */
IIMP_API iimp_status iimp_indirect_estimate(const iimp_operator* h, const iimp_operator* a,
                                            const iimp_state* target,
                                            const iimp_state* reference,
                                            const double* reference_value, iimp_estimate* out);
/* Quantum Fisher information for g at time t (units of 1/omega_a). */
IIMP_API iimp_status iimp_qfi(const iimp_model* model, const iimp_state* state, double t,
                              double* out);

/* Runs one experiment and writes its files. config_path may be NULL for
 * "validate". On IIMP_OK or IIMP_CHECKS_FAILED *summary_json receives a
 * string to release with iimp_string_free. */
IIMP_API iimp_status iimp_run_experiment(const char* experiment, const char* config_path,
                                         const char* out_dir, int cutoff_check, uint64_t seed,
                                         char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* IIMP_IIMP_H */
