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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "iimp/iimp.h"

namespace {

struct Fixture {
  iimp_model* model = nullptr;
  iimp_operator* h = nullptr;
  iimp_operator* sz = nullptr;
  iimp_state* fock6 = nullptr;
  iimp_state* fock3 = nullptr;

  Fixture() {
    REQUIRE(iimp_model_create(R"({"kind": "jc", "p": 1, "cutoff": 12})", &model) == IIMP_OK);
    REQUIRE(iimp_model_hamiltonian(model, &h) == IIMP_OK);
    REQUIRE(iimp_model_observable(model, "sigma_z", &sz) == IIMP_OK);
    REQUIRE(iimp_state_create(model, R"({"kind": "fock", "n": 6})", &fock6) == IIMP_OK);
    REQUIRE(iimp_state_create(model, R"({"kind": "fock", "n": 3})", &fock3) == IIMP_OK);
  }
  ~Fixture() {
    iimp_state_free(fock3);
    iimp_state_free(fock6);
    iimp_operator_free(sz);
    iimp_operator_free(h);
    iimp_model_free(model);
  }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(iimp_version()) > 0);
  CHECK(std::string(iimp_status_string(IIMP_OK)) != std::string(iimp_status_string(IIMP_ERR_CONFIG)));
  CHECK(std::strlen(iimp_status_string(static_cast<iimp_status>(99))) > 0);
}

TEST_CASE("handles and accessors") {
  Fixture f;
  size_t dim = 0;
  CHECK(iimp_model_dim(f.model, &dim) == IIMP_OK);
  CHECK(dim == 24);
  CHECK(iimp_operator_dim(f.h, &dim) == IIMP_OK);
  CHECK(dim == 24);
  CHECK(iimp_state_dim(f.fock6, &dim) == IIMP_OK);
  CHECK(dim == 24);

  double re = 0.0, im = 0.0;
  CHECK(iimp_state_amplitude(f.fock6, 6 * 2 + 1, &re, &im) == IIMP_OK);
  CHECK(re == 1.0);
  CHECK(im == 0.0);
  CHECK(iimp_state_amplitude(f.fock6, 24, &re, &im) == IIMP_ERR_SHAPE);
  CHECK(std::strlen(iimp_last_error()) > 0);

  CHECK(iimp_operator_entry(f.sz, 0, 0, &re, &im) == IIMP_OK);
  CHECK(re == 1.0);
  CHECK(iimp_operator_entry(f.sz, 1, 1, &re, &im) == IIMP_OK);
  CHECK(re == -1.0);

  double mean = 0.0;
  CHECK(iimp_expectation(f.sz, f.fock6, &mean) == IIMP_OK);
  CHECK(mean == -1.0);
}

TEST_CASE("argument and parse errors map to status codes") {
  iimp_model* m = nullptr;
  CHECK(iimp_model_create(nullptr, &m) == IIMP_ERR_INVALID_ARGUMENT);
  CHECK(iimp_model_create("{not json", &m) == IIMP_ERR_CONFIG);
  CHECK(iimp_model_create(R"({"kind": "jc", "p": 0})", &m) == IIMP_ERR_CONFIG);
  CHECK(m == nullptr);

  Fixture f;
  iimp_state* s = nullptr;
  CHECK(iimp_state_create(f.model, R"({"kind": "fock", "n": 40})", &s) == IIMP_ERR_CONFIG);
  CHECK(iimp_state_create(f.model, R"({"kind": "coherent", "re": 5.0})", &s) == IIMP_ERR_TRUNCATION);
  iimp_operator* op = nullptr;
  CHECK(iimp_model_observable(f.model, "J_z", &op) == IIMP_ERR_CONFIG);
  CHECK(iimp_model_observable(f.model, "sigma_z", nullptr) == IIMP_ERR_INVALID_ARGUMENT);

  const double re[2] = {0.0, 0.0}, im[2] = {0.0, 0.0};
  CHECK(iimp_state_from_amplitudes(2, re, im, &s) == IIMP_ERR_NUMERICAL);
  iimp_state* small = nullptr;
  const double one[2] = {1.0, 1.0};
  REQUIRE(iimp_state_from_amplitudes(2, one, nullptr, &small) == IIMP_OK);
  double mean = 0.0;
  CHECK(iimp_expectation(f.sz, small, &mean) == IIMP_ERR_SHAPE);
  iimp_state_free(small);

  iimp_model_free(nullptr);
  iimp_state_free(nullptr);
  iimp_operator_free(nullptr);
}

TEST_CASE("delta, order and estimate") {
  Fixture f;
  const double times[3] = {0.0, 0.02, 0.2};
  double out[3] = {1.0, 1.0, 1.0};
  REQUIRE(iimp_delta(f.h, f.sz, f.fock6, times, 3, out) == IIMP_OK);
  CHECK(out[0] == 0.0);
  CHECK(out[2] > out[1]);
  CHECK(out[1] > 0.0);
  const double unsorted[2] = {0.2, 0.1};
  CHECK(iimp_delta(f.h, f.sz, f.fock6, unsorted, 2, out) == IIMP_ERR_PARAMETER);

  int order = 0;
  CHECK(iimp_detect_order(f.h, f.sz, f.fock6, f.fock3, 4, &order) == IIMP_OK);
  CHECK(order == 2);

  iimp_state* vac = nullptr;
  REQUIRE(iimp_state_create(f.model, R"({"kind": "vacuum"})", &vac) == IIMP_OK);
  CHECK(iimp_detect_order(f.h, f.sz, vac, f.fock3, 4, &order) == IIMP_ERR_ORDER_MISMATCH);
  CHECK(iimp_detect_order(f.h, f.sz, vac, vac, 4, &order) == IIMP_ERR_UNDETECTABLE_ORDER);

  iimp_estimate est{};
  const double ref = 3.0;
  REQUIRE(iimp_indirect_estimate(f.h, f.sz, f.fock6, f.fock3, &ref, &est) == IIMP_OK);
  CHECK(est.order_n == 2);
  CHECK(std::abs(est.estimate - 6.0) < 1e-6);
  CHECK(iimp_indirect_estimate(f.h, f.sz, f.fock6, f.fock3, nullptr, &est) == IIMP_OK);
  CHECK(std::abs(est.ratio_numeric - 2.0) < 1e-6);
  const double zero = 0.0;
  CHECK(iimp_indirect_estimate(f.h, f.sz, f.fock6, f.fock3, &zero, &est) == IIMP_ERR_DEGENERATE_REFERENCE);
  iimp_state_free(vac);

  double q = -1.0;
  CHECK(iimp_qfi(f.model, f.fock6, 0.0, &q) == IIMP_OK);
  CHECK(q == 0.0);
  CHECK(iimp_qfi(f.model, f.fock6, 1e-3, &q) == IIMP_OK);
  CHECK(std::abs(q / 1e-6 / 24.0 - 1.0) < 0.02);
}

TEST_CASE("experiment runs") {
  char* summary = nullptr;
  const std::string out = std::string(IIMP_TEST_OUT);
  const std::string cfg = std::string(IIMP_CONFIG_DIR) + "/qfi_self.json";
  REQUIRE(iimp_run_experiment("qfi", cfg.c_str(), (out + "/qfi_self").c_str(), 0, 1, &summary) == IIMP_OK);
  REQUIRE(summary != nullptr);
  const nlohmann::json j = nlohmann::json::parse(summary);
  CHECK(j.at("passed").get<bool>());
  iimp_string_free(summary);

  summary = nullptr;
  CHECK(iimp_run_experiment("qfi", (std::string(IIMP_CONFIG_DIR) + "/nope.json").c_str(),
                            out.c_str(), 0, 1, &summary) == IIMP_ERR_IO);
  CHECK(summary == nullptr);
  CHECK(iimp_run_experiment("tomography", cfg.c_str(), out.c_str(), 0, 1, &summary) == IIMP_ERR_CONFIG);
  CHECK(std::string(iimp_last_error()).find("declares experiment 'qfi'") != std::string::npos);
  CHECK(iimp_run_experiment("qfi", nullptr, out.c_str(), 0, 1, &summary) == IIMP_ERR_CONFIG);
}
