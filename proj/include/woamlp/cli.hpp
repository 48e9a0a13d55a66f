// Copyright 2026 The woamlp Authors. All Rights Reserved.
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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace woamlp::cli {

/// Exit codes returned by run().
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kDataValidation = 3,
  kNumeric = 4,
};

/// Fully resolved settings for `train`. Serialized as the config echo.
struct RunConfig {
  std::string data;
  std::string output;
  std::string history_out;
  std::string test_out;
  std::string config_out;
  std::uint64_t seed = 42;
  double test_fraction = 0.25;
  bool normalize = true;
  double weight_bound = 10.0;
  std::vector<std::size_t> hidden_layers{10};
  std::string hidden_activation = "sigmoid";
  std::size_t population_size = 30;
  std::size_t max_iterations = 200;
  double spiral_shape = 1.0;
  std::size_t workers = 1;
};

std::string config_to_json(const RunConfig& c);
/// Keys absent from `text` keep the values already in `into`. Unknown keys
/// are rejected.
void merge_config_json(const std::string& text, RunConfig& into);

/// Entry point for the `woamlp` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace woamlp::cli
