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

// Helpers shared by the experiment runners. Not installed.

#pragma once

#include <string>

#include "iimp/experiments.hpp"
#include "iimp/measurement.hpp"

namespace iimp {

double get_number(const Json& j, const char* key, double fallback);
int get_int(const Json& j, const char* key, int fallback);
std::string get_string(const Json& j, const char* key, const std::string& fallback);
const Json& require(const Json& j, const char* key);

std::string resolve_output_dir(const Json& config, const RunOptions& opts,
                               const std::string& experiment);
std::string join_path(const std::string& dir, const std::string& name);
Json dump_result(const IimpResult& r);
std::string json_text(const Json& j);
int scaled_cutoff(int cutoff);

}  // namespace iimp
