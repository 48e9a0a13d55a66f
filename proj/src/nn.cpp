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

#include "woamlp/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace woamlp {
namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::kTanh:
      return std::tanh(z);
    case Activation::kRelu:
      return z > 0.0 ? z : 0.0;
  }
  return z;
}

void check_params(const MlpTopology& t, std::span<const double> params) {
  t.validate();
  const std::size_t want = param_count(t);
  if (params.size() != want) {
    throw DataError("parameter vector has length " +
                    std::to_string(params.size()) + ", topology needs " +
                    std::to_string(want));
  }
}

}  // namespace

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kTanh:
      return "tanh";
    case Activation::kRelu:
      return "relu";
  }
  return "?";
}

Activation activation_from_string(const std::string& name) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw UsageError("unknown activation '" + name + "'");
}

void MlpTopology::validate() const {
  if (layers.size() < 2) {
    throw UsageError("topology needs at least input and output layers");
  }
  for (std::size_t n : layers) {
    if (n == 0) throw UsageError("layer sizes must be positive");
  }
}

std::size_t param_count(const MlpTopology& t) {
  std::size_t total = 0;
  for (std::size_t k = 0; k + 1 < t.layers.size(); ++k) {
    total += t.layers[k] * t.layers[k + 1] + t.layers[k + 1];
  }
  return total;
}

std::vector<DenseLayer> unflatten(const MlpTopology& t,
                                  std::span<const double> params) {
  check_params(t, params);
  std::vector<DenseLayer> out;
  std::size_t offset = 0;
  for (std::size_t k = 0; k + 1 < t.layers.size(); ++k) {
    DenseLayer layer;
    layer.inputs = t.layers[k];
    layer.outputs = t.layers[k + 1];
    const std::size_t nw = layer.inputs * layer.outputs;
    layer.weights.assign(params.begin() + offset,
                         params.begin() + offset + nw);
    offset += nw;
    layer.bias.assign(params.begin() + offset,
                      params.begin() + offset + layer.outputs);
    offset += layer.outputs;
    out.push_back(std::move(layer));
  }
  return out;
}

std::vector<double> flatten(std::span<const DenseLayer> layers) {
  std::vector<double> out;
  for (const auto& layer : layers) {
    out.insert(out.end(), layer.weights.begin(), layer.weights.end());
    out.insert(out.end(), layer.bias.begin(), layer.bias.end());
  }
  return out;
}

std::vector<double> mlp_logits(const MlpTopology& t,
                               std::span<const double> params,
                               std::span<const double> x) {
  check_params(t, params);
  if (x.size() != t.inputs()) {
    throw DataError("input has " + std::to_string(x.size()) +
                    " features, network expects " +
                    std::to_string(t.inputs()));
  }
  std::vector<double> current(x.begin(), x.end());
  std::vector<double> next;
  const double* p = params.data();
  const std::size_t last = t.layers.size() - 2;
  for (std::size_t k = 0; k + 1 < t.layers.size(); ++k) {
    const std::size_t in = t.layers[k];
    const std::size_t out = t.layers[k + 1];
    const double* bias = p + in * out;
    next.assign(out, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      const double* w = p + o * in;
      double z = bias[o];
      for (std::size_t i = 0; i < in; ++i) z += w[i] * current[i];
      double v = k == last ? z : activate(t.hidden, z);
      if (!std::isfinite(v)) {
        throw NumericError("non-finite activation in layer " +
                           std::to_string(k + 1));
      }
      next[o] = v;
    }
    p = bias + out;
    current.swap(next);
  }
  return current;
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> mlp_forward(const MlpTopology& t,
                                std::span<const double> params,
                                std::span<const double> x) {
  return softmax(mlp_logits(t, params, x));
}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DataError("grid data size does not match its shape");
  }
}

Grid cnn_layer_forward(const Grid& input, const ConvLayerSpec& spec) {
  const Grid& k = spec.kernel;
  if (k.rows() == 0 || k.cols() == 0) throw DataError("empty kernel");
  if (k.rows() > input.rows() || k.cols() > input.cols()) {
    throw DataError("kernel larger than input");
  }
  const std::size_t n = spec.pool_window;
  if (n == 0) throw DataError("pool window must be at least 1");
  const std::size_t ch = input.rows() - k.rows() + 1;
  const std::size_t cw = input.cols() - k.cols() + 1;
  if (n > ch || n > cw) {
    throw DataError("pool window larger than convolved output");
  }

  Grid activated(ch, cw);
  for (std::size_t r = 0; r < ch; ++r) {
    for (std::size_t c = 0; c < cw; ++c) {
      double z = spec.bias;
      for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < k.cols(); ++j) {
          z += k(i, j) * input(r + i, c + j);
        }
      }
      activated(r, c) = z > 0.0 ? z : 0.0;
    }
  }

  Grid out(ch / n, cw / n);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      double acc = spec.pool == PoolKind::kMax
                       ? -std::numeric_limits<double>::infinity()
                       : 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double v = activated(r * n + i, c * n + j);
          acc = spec.pool == PoolKind::kMax ? std::max(acc, v) : acc + v;
        }
      }
      if (spec.pool == PoolKind::kAverage) acc /= static_cast<double>(n * n);
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace woamlp
