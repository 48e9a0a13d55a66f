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

// Gradient-free MLP training: the flattened network parameters are the
// search point of a whale optimizer minimizing one-hot MSE.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "woamlp/feature_io.hpp"
#include "woamlp/nn.hpp"
#include "woamlp/woa.hpp"

namespace woamlp {

struct TrainConfig {
  MlpTopology topology;
  /// Bounds are ignored; the search box is +-weight_bound per parameter.
  WoaConfig woa;
  double weight_bound = 10.0;
  bool normalize = true;

  /// Optimizer config with the parameter box filled in.
  WoaConfig resolved_woa() const;
  void validate() const;
};

struct TrainedModel {
  MlpTopology topology;
  std::vector<double> params;
  std::optional<Normalizer> normalizer;
  std::vector<std::string> class_names;
  std::vector<double> history;

  /// Throws DataError if the fields are mutually inconsistent.
  void validate() const;
};

struct Prediction {
  std::size_t class_index = 0;
  std::string label;
  std::vector<double> probabilities;
};

/// Mean over samples and output units of (softmax - one_hot)^2.
double fitness(std::span<const double> params, const MlpTopology& topology,
               const FeatureTable& data);

/// Fits the normalizer on `data` when enabled, then minimizes fitness.
TrainedModel train(const TrainConfig& config, const FeatureTable& data,
                   const WoaOptions& options = {});

/// Normalizes (if the model carries a normalizer) then runs the network.
/// Ties go to the lowest class index.
Prediction predict(const TrainedModel& model, std::span<const double> x);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace woamlp
