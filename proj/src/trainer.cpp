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

#include "woamlp/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace woamlp {

WoaConfig TrainConfig::resolved_woa() const {
  WoaConfig out = woa;
  out.bounds = Bounds::uniform(param_count(topology), -weight_bound,
                               weight_bound);
  return out;
}

void TrainConfig::validate() const {
  topology.validate();
  if (!(weight_bound > 0.0) || !std::isfinite(weight_bound)) {
    throw UsageError("weight bound must be positive and finite");
  }
  resolved_woa().validate();
}

void TrainedModel::validate() const {
  topology.validate();
  if (params.size() != param_count(topology)) {
    throw DataError("model has " + std::to_string(params.size()) +
                    " parameters, topology needs " +
                    std::to_string(param_count(topology)));
  }
  for (double v : params) {
    if (!std::isfinite(v)) throw DataError("model has non-finite parameter");
  }
  if (class_names.size() != topology.outputs()) {
    throw DataError("class name count does not match output layer size");
  }
  if (normalizer && (normalizer->means.size() != topology.inputs() ||
                     normalizer->stddevs.size() != topology.inputs())) {
    throw DataError("normalizer width does not match input layer size");
  }
}

double fitness(std::span<const double> params, const MlpTopology& topology,
               const FeatureTable& data) {
  if (data.cols() != topology.inputs()) {
    throw DataError("data has " + std::to_string(data.cols()) +
                    " columns, network expects " +
                    std::to_string(topology.inputs()));
  }
  if (data.empty()) throw DataError("fitness needs at least one sample");
  const std::size_t c = topology.outputs();
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto out = mlp_forward(topology, params, data.row(i));
    const std::size_t target = data.label_index(i);
    for (std::size_t k = 0; k < c; ++k) {
      const double diff = out[k] - (k == target ? 1.0 : 0.0);
      total += diff * diff;
    }
  }
  return total / static_cast<double>(data.rows() * c);
}

TrainedModel train(const TrainConfig& config, const FeatureTable& data,
                   const WoaOptions& options) {
  config.validate();
  if (data.class_names().size() != config.topology.outputs()) {
    throw DataError("data has " + std::to_string(data.class_names().size()) +
                    " classes, output layer has " +
                    std::to_string(config.topology.outputs()));
  }
  for (std::size_t n : data.class_counts()) {
    if (n == 0) throw DataError("every class needs at least one sample");
  }

  TrainedModel model;
  model.topology = config.topology;
  model.class_names = data.class_names();
  const FeatureTable* fit_on = &data;
  FeatureTable normalized;
  if (config.normalize) {
    model.normalizer = fit_normalizer(data);
    normalized = apply_normalizer(data, *model.normalizer);
    fit_on = &normalized;
  }
  const MlpTopology& topology = config.topology;
  Objective objective = [&topology, fit_on](std::span<const double> p) {
    return fitness(p, topology, *fit_on);
  };
  WoaState result = optimize(objective, config.resolved_woa(), options);
  model.params = std::move(result.best_position);
  model.history = std::move(result.history);
  return model;
}

Prediction predict(const TrainedModel& model, std::span<const double> x) {
  std::vector<double> input(x.begin(), x.end());
  if (input.size() != model.topology.inputs()) {
    throw DataError("input has " + std::to_string(input.size()) +
                    " features, model expects " +
                    std::to_string(model.topology.inputs()));
  }
  if (model.normalizer) normalize_row(input, *model.normalizer);
  Prediction out;
  out.probabilities = mlp_forward(model.topology, model.params, input);
  // max_element returns the first maximum, which is the lowest index.
  out.class_index = static_cast<std::size_t>(
      std::max_element(out.probabilities.begin(), out.probabilities.end()) -
      out.probabilities.begin());
  out.label = model.class_names.at(out.class_index);
  return out;
}

std::string model_to_json(const TrainedModel& model) {
  nlohmann::json j;
  j["topology"] = {{"layers", model.topology.layers},
                   {"hidden_activation", to_string(model.topology.hidden)}};
  j["params"] = model.params;
  if (model.normalizer) {
    j["normalizer"] = {{"means", model.normalizer->means},
                       {"stddevs", model.normalizer->stddevs}};
  } else {
    j["normalizer"] = nullptr;
  }
  j["class_names"] = model.class_names;
  j["history"] = model.history;
  return j.dump(1);
}

TrainedModel model_from_json(const std::string& text) {
  TrainedModel model;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& topo = j.at("topology");
    model.topology.layers = topo.at("layers").get<std::vector<std::size_t>>();
    model.topology.hidden = activation_from_string(
        topo.value("hidden_activation", std::string("sigmoid")));
    model.params = j.at("params").get<std::vector<double>>();
    const auto& norm = j.at("normalizer");
    if (!norm.is_null()) {
      model.normalizer = normalizer_from_json(norm.dump());
    }
    model.class_names = j.at("class_names").get<std::vector<std::string>>();
    if (j.contains("history")) {
      model.history = j.at("history").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  } catch (const Error& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
  model.validate();
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace woamlp
