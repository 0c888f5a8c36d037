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

// Command-line front end. Exit status: 0 success, 1 checks failed, 2 error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "iimp/iimp.h"

int main(int argc, char** argv) {
  CLI::App app{"Indirect measurement experiments for cavity-QED models"};
  app.set_version_flag("--version", std::string(iimp_version()));

  std::string experiment;
  std::string config;
  std::string out_dir;
  bool cutoff_check = false;
  std::uint64_t seed = 20260415;
  app.add_option("experiment", experiment, "tomography, ratio-curves, qfi or validate")
      ->required()
      ->check(CLI::IsMember({"tomography", "ratio-curves", "qfi", "validate"}));
  app.add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_flag("--cutoff-check", cutoff_check, "rerun limits at 1.5x cutoff and report drift");
  app.add_option("--seed", seed, "seed for randomized validation instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (config.empty() && experiment != "validate") {
    std::cerr << "iimp: --config is required for " << experiment << "\n";
    return 2;
  }

  char* summary = nullptr;
  const iimp_status st =
      iimp_run_experiment(experiment.c_str(), config.empty() ? nullptr : config.c_str(),
                          out_dir.empty() ? nullptr : out_dir.c_str(), cutoff_check ? 1 : 0, seed,
                          &summary);
  if (summary != nullptr) {
    std::cout << summary << "\n";
    iimp_string_free(summary);
  }
  if (st == IIMP_OK) return 0;
  if (st == IIMP_CHECKS_FAILED) {
    std::cerr << "iimp: " << experiment << ": one or more checks failed\n";
    return 1;
  }
  std::cerr << "iimp: " << iimp_status_string(st) << ": " << iimp_last_error() << "\n";
  return 2;
}
