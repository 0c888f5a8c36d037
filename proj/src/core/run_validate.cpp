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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "iimp/errors.hpp"
#include "iimp/experiments.hpp"
#include "iimp/measurement.hpp"
#include "iimp/qfi.hpp"
#include "run_common.hpp"

namespace iimp {

namespace {

class Checks {
 public:
  void add(const std::string& name, double tolerance, double observed, bool passed,
           const std::string& detail = "") {
    Json c{{"name", name}, {"tolerance", tolerance}, {"observed", observed}, {"passed", passed}};
    if (!detail.empty()) c["detail"] = detail;
    all_passed_ = all_passed_ && passed;
    list_.push_back(std::move(c));
  }
  void add_max(const std::string& name, double tolerance, double observed,
               const std::string& detail = "") {
    add(name, tolerance, observed, observed <= tolerance, detail);
  }
  void add_min(const std::string& name, double threshold, double observed,
               const std::string& detail = "") {
    add(name, threshold, observed, observed >= threshold, detail);
  }
  void fail(const std::string& name, const std::string& detail) {
    add(name, 0.0, std::nan(""), false, detail);
  }
  bool passed() const { return all_passed_; }
  const Json& list() const { return list_; }

 private:
  Json list_ = Json::array();
  bool all_passed_ = true;
};

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix random_matrix(Rng& rng, int n) {
  std::normal_distribution<double> nd;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  }
  return m;
}

Operator random_hermitian(Rng& rng, int n) {
  const Matrix m = random_matrix(rng, n);
  return Operator::hermitian(0.5 * (m + m.adjoint()));
}

Vector random_vector(Rng& rng, int n) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  return v;
}

Ket random_ket(Rng& rng, int n) { return Ket::normalized(random_vector(rng, n)); }

/// Random field over the lowest `levels` Fock states, padded to the cutoff.
Ket random_field(Rng& rng, int levels, int cutoff) {
  Vector v = Vector::Zero(cutoff);
  v.head(levels) = random_vector(rng, levels);
  return Ket::normalized(v);
}

ModelParams random_jc(Rng& rng, int p, int cutoff) {
  ModelParams mp;
  mp.kind = ModelKind::JC;
  mp.p = p;
  mp.cutoff = cutoff;
  mp.omega_0 = uniform(rng, 0.8, 1.2);
  mp.g = uniform(rng, 0.02, 0.2);
  mp.U = uniform(rng, 0.05, 0.2);
  mp.gamma = uniform(rng, 0.0, 0.4);
  return mp;
}

double herm_dev(const Operator& x) {
  return max_abs_diff(x, x.adjoint()) / std::max(1.0, x.max_abs());
}

void check_hilbert(Checks& ck, Rng& rng) {
  ModelParams jc;
  jc.cutoff = 10;
  const std::vector<Operator> hs{random_hermitian(rng, 6), build_hamiltonian(jc)};
  double unit = 0.0, norm = 0.0, group = 0.0;
  for (const Operator& h : hs) {
    const Propagator prop(h);
    const Ket psi = random_ket(rng, static_cast<int>(h.dim()));
    for (int k = 0; k <= 20; ++k) {
      const double t = 0.5 * k;
      const Matrix u = prop.unitary(t).matrix();
      const Matrix id = Matrix::Identity(u.rows(), u.cols());
      unit = std::max(unit, (u.adjoint() * u - id).cwiseAbs().maxCoeff());
      norm = std::max(norm, std::abs(prop.evolve(psi.vector(), t).norm() - 1.0));
    }
    for (double t1 : {0.3, 1.7, 4.0}) {
      for (double t2 : {0.2, 2.5}) {
        group = std::max(group, max_abs_diff(prop.unitary(t1) * prop.unitary(t2),
                                             prop.unitary(t1 + t2)));
      }
    }
  }
  ck.add_max("unitarity", policy::unitarity_tol, unit, "max |U^dag U - I|, t in [0, 10]");
  ck.add_max("norm_preservation", policy::ket_norm_tol, norm);
  ck.add_max("group_law", policy::group_law_tol, group);

  double closure = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h = random_hermitian(rng, 5);
    const Operator a = random_hermitian(rng, 5);
    for (int n = 1; n <= 4; ++n) closure = std::max(closure, herm_dev(nested_commutator(h, a, n)));
  }
  const Operator hjc = build_hamiltonian(jc);
  const Operator sz = atomic_inversion(jc);
  for (int n = 1; n <= 4; ++n) closure = std::max(closure, herm_dev(nested_commutator(hjc, sz, n)));
  ck.add_max("hermiticity_closure", 1e-10, closure, "relative, n = 1..4");

  double lin = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a(random_matrix(rng, 4)), b(random_matrix(rng, 4)), c(random_matrix(rng, 4));
    const Complex s(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Complex u(uniform(rng, -1, 1), uniform(rng, -1, 1));
    lin = std::max(lin, max_abs_diff(commutator(a * s + b * u, c),
                                     commutator(a, c) * s + commutator(b, c) * u));
    lin = std::max(lin, max_abs_diff(commutator(c, a * s + b * u),
                                     commutator(c, a) * s + commutator(c, b) * u));
  }
  ck.add_max("commutator_bilinearity", 1e-12, lin);
}

void check_operators(Checks& ck) {
  // Off-diagonal zeros are exact; diagonal entries are differences of squared
  // square roots and carry a few ulps of rounding.
  double pattern = 0.0;
  bool structure = true;
  for (int d : {2, 5, 30, 60}) {
    const FockCutoff fc(d);
    const Operator a = annihilation(fc);
    const Matrix c = commutator(a, a.adjoint()).matrix();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const double want = i != j ? 0.0 : (i == d - 1 ? -(d - 1.0) : 1.0);
        if (i != j && c(i, j) != Complex(0.0, 0.0)) structure = false;
        pattern = std::max(pattern, std::abs(c(i, j) - want));
      }
    }
  }
  const double ulps = 8.0 * policy::machine_eps * 60.0;
  ck.add("truncated_commutator_pattern", ulps, pattern, structure && pattern <= ulps,
         "exact off-diagonal zeros; diagonal 1, ..., 1, -(d-1) within a few ulps");

  double su2 = 0.0;
  for (int n : {1, 2, 10}) {
    const SpinOps s = collective_spin(n);
    su2 = std::max(su2, max_abs_diff(commutator(s.x, s.y), s.z * I));
    su2 = std::max(su2, max_abs_diff(commutator(s.z, s.plus), s.plus));
    su2 = std::max(su2, max_abs_diff(commutator(s.z, s.minus), -s.minus));
  }
  ck.add_max("su2_algebra", 1e-12, su2, "N in {1, 2, 10}");

  double coh = 0.0;
  double prev = 1.0;
  bool monotone = true;
  for (int d = 10; d <= 60; d += 5) {
    const double def = coherent_truncation_deficit({std::sqrt(6.0), 0.0}, FockCutoff(d));
    if (def > prev) monotone = false;
    prev = def;
    if (def <= policy::coherent_max_deficit) {
      const Ket c = coherent_state({std::sqrt(6.0), 0.0}, FockCutoff(d));
      coh = std::max(coh, std::abs(c.vector().norm() - 1.0));
    }
  }
  ck.add("coherent_normalization", policy::ket_norm_tol, coh, monotone && coh <= policy::ket_norm_tol,
         "unit norm after renormalization, deficit monotone in cutoff");
}

void check_models(Checks& ck) {
  double herm = 0.0, cons = 0.0, dh_herm = 0.0, fd = 0.0;
  for (ModelKind kind : {ModelKind::Rabi, ModelKind::JC, ModelKind::Dicke, ModelKind::TC}) {
    for (int p : {1, 2}) {
      ModelParams mp;
      mp.kind = kind;
      mp.p = p;
      mp.cutoff = 10;
      mp.atoms = mp.collective() ? 3 : 1;
      const Operator h = build_hamiltonian(mp);
      herm = std::max(herm, herm_dev(h));
      const Operator dh = dh_dg(mp);
      dh_herm = std::max(dh_herm, herm_dev(dh));
      const double step = 1e-6;
      ModelParams up = mp, dn = mp;
      up.g += step;
      dn.g -= step;
      const Operator num = (build_hamiltonian(up) - build_hamiltonian(dn)) * Complex(0.5 / step);
      fd = std::max(fd, max_abs_diff(num, dh));
      if (mp.rotating_wave()) {
        cons = std::max(cons, commutator(excitation_number(mp), h).max_abs());
      }
    }
  }
  ck.add_max("hamiltonian_hermiticity", policy::hermitian_rel_tol, herm);
  ck.add_max("excitation_conservation", policy::conservation_tol, cons, "JC and TC, p in {1, 2}");
  ck.add_max("dh_dg_hermiticity", policy::hermitian_rel_tol, dh_herm);
  ck.add_max("dh_dg_finite_difference", 1e-8, fd);
}

void check_jc_blocks(Checks& ck, Rng& rng, BlockConvention conv) {
  double unit = 0.0, roots = 0.0;
  for (int p : {1, 2}) {
    ModelParams mp = random_jc(rng, p, 24);
    for (int n = p; n < 20; ++n) {
      const JcBlockCoefficients b = jc_block_coefficients(n, mp, conv);
      roots = std::max({roots, std::abs(b.y1 - b.y2 - 1.0), std::abs(b.x1 + b.x2 - (b.A + b.D)),
                        std::abs(b.x1 * b.x2 - (b.A * b.D - b.B * b.B)) / std::max(1.0, b.A * b.D)});
    }
    for (int k = 0; k <= 50; ++k) {
      const JcAmplitudes amp = jc_analytic_amplitudes(20, mp, 0.1 * k / mp.g, conv);
      for (std::size_t n = 0; n < amp.c_e.size(); ++n) {
        unit = std::max(unit, std::abs(std::norm(amp.c_e[n]) + std::norm(amp.c_g[n]) - 1.0));
      }
    }
  }
  ck.add_max("jc_block_unitarity", 1e-10, unit);
  ck.add_max("jc_block_root_identities", 1e-10, roots);

  // Analytic vs numeric propagation on random superpositions.
  double worst = 1.0;
  std::vector<int> failing;
  for (int p : {1, 2}) {
    for (int trial = 0; trial < 10; ++trial) {
      const ModelParams mp = random_jc(rng, p, 12);
      const Ket field = random_field(rng, 8, 8);
      std::vector<Complex> c(field.vector().data(), field.vector().data() + 8);
      Vector full = Vector::Zero(static_cast<Eigen::Index>(mp.dim()));
      for (int n = 0; n < 8; ++n) full(2 * n + kGroundIndex) = c[static_cast<std::size_t>(n)];
      const Propagator prop(build_hamiltonian(mp));
      for (int k = 0; k <= 25; ++k) {
        const double t = 0.2 * k / mp.g;
        const Ket num = Ket::normalized(prop.evolve(full, t));
        const double f = fidelity_pure(jc_analytic_state(c, mp, t, conv), num);
        if (f < worst) worst = f;
        if (f < 1.0 - policy::analytic_fidelity_tol) {
          for (int n = 0; n < 8; ++n) {
            std::vector<Complex> single(static_cast<std::size_t>(n + 1), Complex(0.0, 0.0));
            single.back() = 1.0;
            Vector v = Vector::Zero(full.size());
            v(2 * n + kGroundIndex) = 1.0;
            const double fb = fidelity_pure(jc_analytic_state(single, mp, t, conv),
                                            Ket::normalized(prop.evolve(v, t)));
            if (fb < 1.0 - policy::analytic_fidelity_tol &&
                std::find(failing.begin(), failing.end(), n) == failing.end()) {
              failing.push_back(n);
            }
          }
        }
      }
    }
  }
  std::string detail = "fidelity vs numeric propagation over t in [0, 5/g]";
  if (!failing.empty()) {
    std::sort(failing.begin(), failing.end());
    detail += "; failing blocks n =";
    for (int n : failing) detail += " " + std::to_string(n);
  }
  ck.add_min("jc_analytic_vs_numeric", 1.0 - policy::analytic_fidelity_tol, worst, detail);
}

void check_iimp(Checks& ck, Rng& rng) {
  double worst_excess = 0.0;
  int accepted = 0;
  int attempts = 0;
  std::string detail;
  while (accepted < policy::validate_random_instances && attempts < 5000) {
    ++attempts;
    ModelParams mp;
    mp.kind = uniform(rng, 0, 1) < 0.5 ? ModelKind::Rabi : ModelKind::JC;
    mp.p = uniform(rng, 0, 1) < 0.5 ? 1 : 2;
    mp.cutoff = 10;
    mp.omega_0 = uniform(rng, 0.8, 1.2);
    mp.g = uniform(rng, 0.03, 0.15);
    mp.U = uniform(rng, 0.0, 0.2);
    mp.gamma = uniform(rng, 0.0, 0.3);
    const Operator h = build_hamiltonian(mp);
    const Operator a = uniform(rng, 0, 1) < 0.5 ? atomic_inversion(mp) : photon_number(mp);
    const Ket t = product_state(random_field(rng, 4, 10), random_ket(rng, 2));
    const Ket r = product_state(random_field(rng, 4, 10), random_ket(rng, 2));
    int n = 0;
    try {
      n = detect_order(h, a, t, r);
    } catch (const Error&) {
      continue;
    }
    if (n > 2) continue;
    const Operator x = nested_commutator(h, a, n);
    const double scale = x.max_abs();
    const double vt = expectation(t, x).real();
    const double vr = expectation(r, x).real();
    // Skip nearly cancelling instances where the limit is ill-conditioned.
    if (std::abs(vr) < 1e-2 * scale || std::abs(vt) < 1e-2 * scale) continue;
    const double exact = vt / vr;
    const RatioEstimate num = ratio_limit_numeric(h, a, t, r);
    const double diff = std::abs(num.ratio - exact);
    const double tol = std::max(num.error, policy::ratio_agreement_floor);
    worst_excess = std::max(worst_excess, diff / tol);
    if (diff > tol && detail.empty()) {
      std::ostringstream os;
      os << "instance " << accepted << ": exact " << exact << " numeric " << num.ratio;
      detail = os.str();
    }
    ++accepted;
  }
  if (accepted < policy::validate_random_instances) {
    ck.fail("ratio_consistency", "could not draw enough well-conditioned instances");
  } else {
    ck.add_max("ratio_consistency", 1.0, worst_excess,
               detail.empty() ? "max |numeric - exact| / max(error, 1e-6) over 50 instances"
                              : detail);
  }

  // Pure states through the mixed-state path.
  ModelParams jc;
  jc.cutoff = 8;
  const Operator h = build_hamiltonian(jc);
  const Operator sz = atomic_inversion(jc);
  double traj = 0.0, est = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Ket psi = product_state(random_field(rng, 4, 8), random_ket(rng, 2));
    const Ket ref = product_state(fock_state(3, FockCutoff(8)), atom_ket(AtomState::ground()));
    const std::vector<double> times = log_grid(1e-3, 10.0, 30);
    const Trajectory a = delta_trajectory(h, psi, sz, times);
    const Trajectory b = delta_trajectory_mixed(h, DensityMatrix::from_ket(psi), sz, times);
    for (std::size_t k = 0; k < times.size(); ++k) traj = std::max(traj, std::abs(a.values[k] - b.values[k]));
    try {
      const IimpResult rp = indirect_estimate(h, sz, psi, ref);
      const IimpResult rm = indirect_estimate_mixed(h, sz, DensityMatrix::from_ket(psi),
                                                    DensityMatrix::from_ket(ref));
      est = std::max(est, std::abs(rp.estimate - rm.estimate));
    } catch (const OrderMismatchError&) {
    }
  }
  ck.add_max("mixed_pure_trajectory", 1e-12, traj);
  ck.add_max("mixed_pure_estimate", policy::mixed_pure_tol, est);

  // Derivative/commutator identity.
  double fd_rel = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Ket psi = product_state(random_field(rng, 4, 8), random_ket(rng, 2));
    for (int n : {1, 2}) {
      const DerivativeCheck d = derivative_commutator_check(h, sz, psi, n, 1e-2);
      fd_rel = std::max(fd_rel, d.abs_diff / std::max(std::abs(d.commutator_value), 1e-3));
    }
  }
  ck.add_max("derivative_commutator", 1e-6, fd_rel, "order-4 stencil at dt = 1e-2");
}

void check_qfi(Checks& ck, Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    ModelParams mp;
    mp.kind = trial % 2 == 0 ? ModelKind::JC : ModelKind::Rabi;
    mp.cutoff = 10;
    const Ket psi = product_state(random_field(rng, 4, 10), random_ket(rng, 2));
    for (double t : {0.0, 0.01, 0.5, 3.0}) worst = std::min(worst, qfi_pure(mp, psi, t).value);
  }
  ck.add_min("qfi_nonnegative", -policy::qfi_nonnegative_tol, worst);
}

double convergence_probe(int cutoff) {
  ModelParams mp;
  mp.kind = ModelKind::JC;
  mp.p = 2;
  mp.cutoff = cutoff;
  const FockCutoff fc(cutoff);
  const Ket tgt = product_state(coherent_state({std::sqrt(6.0), 0.0}, fc), atom_ket(AtomState::ground()));
  const Ket ref = product_state(fock_state(3, fc), atom_ket(AtomState::ground()));
  return 6.0 * ratio_limit_exact(build_hamiltonian(mp), atomic_inversion(mp), tgt, ref);
}

void check_convergence(Checks& ck, int cutoff) {
  try {
    const double a = convergence_probe(cutoff);
    const double b = convergence_probe(scaled_cutoff(cutoff));
    std::ostringstream os;
    os << "JC p=2 coherent target limit at cutoff " << cutoff << ": " << a << ", at "
       << scaled_cutoff(cutoff) << ": " << b;
    ck.add_max("cutoff_convergence", policy::cutoff_drift_tol, std::abs(a - b), os.str());
  } catch (const TruncationError& e) {
    ck.fail("cutoff_convergence", e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void check_determinism(Checks& ck, const std::string& out_dir) {
  const Json cfg{{"experiment", "ratio-curves"},
                 {"model", {{"kind", "jc"}, {"p", 1}, {"cutoff", 12}}},
                 {"target_state", {{"kind", "fock"}, {"n", 6}}},
                 {"reference_state", {{"kind", "fock"}, {"n", 3}}},
                 {"observable", "sigma_z"},
                 {"time_grid", {{"t_min", 1e-4}, {"t_max", 1.0}, {"points", 50}, {"spacing", "log"}}}};
  const std::string a = join_path(out_dir, "determinism_a");
  const std::string b = join_path(out_dir, "determinism_b");
  RunOptions oa, ob;
  oa.out_dir = a;
  ob.out_dir = b;
  run_ratio_curves(cfg, oa);
  run_ratio_curves(cfg, ob);
  const std::string ca = slurp(join_path(a, "curves.csv"));
  const std::string cb = slurp(join_path(b, "curves.csv"));
  ck.add("csv_determinism", 0.0, ca == cb ? 0.0 : 1.0, !ca.empty() && ca == cb,
         "two identical runs produce byte-identical curves.csv");
}

}  // namespace

RunOutcome run_validate(const Json& config, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const Json cfg = config.is_object() ? config : Json::object();
  const std::string out_dir = resolve_output_dir(cfg, opts, "validate");
  const std::string mode = get_string(cfg, "jc_block_mode", "as-derived");
  if (mode != "as-derived" && mode != "as-printed") {
    throw ConfigError("jc_block_mode must be 'as-derived' or 'as-printed'");
  }
  const BlockConvention conv =
      mode == "as-printed" ? BlockConvention::AsPrinted : BlockConvention::AsDerived;
  const int cutoff = get_int(cfg, "cutoff", policy::default_coherent_cutoff);

  Rng rng(opts.seed);
  Checks ck;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      ck.fail(name, e.what());
    }
  };
  guarded("hilbert", [&] { check_hilbert(ck, rng); });
  guarded("operators", [&] { check_operators(ck); });
  guarded("models", [&] { check_models(ck); });
  guarded("jc_blocks", [&] { check_jc_blocks(ck, rng, conv); });
  guarded("iimp", [&] { check_iimp(ck, rng); });
  guarded("qfi", [&] { check_qfi(ck, rng); });
  guarded("cutoff_convergence", [&] { check_convergence(ck, cutoff); });
  guarded("csv_determinism", [&] { check_determinism(ck, out_dir); });

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunOutcome outcome;
  outcome.passed = ck.passed();
  outcome.summary = Json{{"experiment", "validate"},
                         {"passed", ck.passed()},
                         {"seed", opts.seed},
                         {"jc_block_mode", mode},
                         {"cutoff", cutoff},
                         {"runtime_seconds", seconds},
                         {"checks", ck.list()}};
  write_text(join_path(out_dir, "report.json"), json_text(outcome.summary));
  return outcome;
}

}  // namespace iimp
