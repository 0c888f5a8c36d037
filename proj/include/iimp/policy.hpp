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

#include <cstddef>
#include <limits>

/// Numeric policy shared by the library and its test suites.
///
/// Every tolerance and default step used anywhere in the code base lives here.
/// Frequencies are in units of the cavity frequency omega_a and times in units
/// of 1/omega_a unless a name says otherwise.
namespace iimp::policy {

inline constexpr double machine_eps = std::numeric_limits<double>::epsilon();

// hilbert
inline constexpr double hermitian_rel_tol = 1e-12;
inline constexpr double ket_norm_tol = 1e-10;
inline constexpr double density_hermitian_tol = 1e-12;
inline constexpr double density_trace_tol = 1e-10;
inline constexpr double density_min_eigenvalue = -1e-10;
inline constexpr double unitarity_tol = 1e-10;
inline constexpr double group_law_tol = 1e-9;
inline constexpr double expectation_imag_tol = 1e-12;
inline constexpr double fidelity_upper_slack = 1e-12;
inline constexpr std::size_t max_dim = 4096;

// operators
inline constexpr double atom_norm_tol = 1e-12;
inline constexpr double coherent_warn_deficit = 1e-8;
inline constexpr double coherent_max_deficit = 1e-4;
/// Coherent states with |alpha|^2 above cutoff / 3 trigger a warning.
inline constexpr double coherent_occupation_fraction = 1.0 / 3.0;
inline constexpr int default_fock_cutoff = 30;
inline constexpr int default_coherent_cutoff = 60;
inline constexpr double cutoff_check_factor = 1.5;
inline constexpr double cutoff_drift_tol = 1e-6;

// models
inline constexpr double default_omega_a = 1.0;
inline constexpr double default_omega_0 = 1.0;
inline constexpr double default_kerr = 0.1;
inline constexpr double default_dispersive = 0.2;
inline constexpr double default_coupling = 0.05;
inline constexpr double conservation_tol = 1e-12;

// evolution
inline constexpr double block_root_tol = 1e-10;
inline constexpr double analytic_fidelity_tol = 1e-9;
inline constexpr int limit_grid_points = 400;
inline constexpr double limit_grid_t_min = 1e-5;  // in 1/g
inline constexpr double limit_grid_t_max = 1e-1;  // in 1/g

// iimp
inline constexpr double order_detection_eps = 1e-9;
inline constexpr int default_max_order = 4;
inline constexpr double t0_scale = 1e-2;
inline constexpr double t0_max_product = 0.5;
inline constexpr int default_levels = 6;
inline constexpr int min_levels = 3;
inline constexpr double underflow_factor = 100.0;
inline constexpr double ratio_agreement_floor = 1e-6;
inline constexpr double degenerate_reference_tol = 1e-12;
/// Stencil step for the derivative/commutator identity check.
inline constexpr double default_fd_step = 1e-3;
/// Below this the stencil is dominated by cancellation.
inline constexpr double min_fd_step = 1e-5;
inline constexpr double mixed_pure_tol = 1e-10;
inline constexpr double non_disturbance_fidelity = 0.999;
inline constexpr double non_disturbance_window = 2e-3;  // in 1/g

// qfi
inline constexpr double qfi_nonnegative_tol = 1e-8;
inline constexpr double qfi_step_scale = 1e-5;
inline constexpr double qfi_step_check_factor = 10.0;
inline constexpr double qfi_window_ratio_tol = 0.01;

// cli
inline constexpr double limit_agreement_tol = 1e-4;
inline constexpr int csv_significant_digits = 17;
inline constexpr int validate_random_instances = 50;

}  // namespace iimp::policy
