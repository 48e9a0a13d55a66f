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

// Multi-layer perceptrons evaluated straight from a flat parameter vector,
// plus a single convolution + ReLU + pooling reference layer.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "woamlp/error.hpp"

namespace woamlp {

enum class Activation { kSigmoid, kTanh, kRelu };

std::string to_string(Activation a);
/// Accepts "sigmoid", "tanh" or "relu"; throws UsageError otherwise.
Activation activation_from_string(const std::string& name);

/// Layer sizes from input to output. Output is always softmax.
struct MlpTopology {
  std::vector<std::size_t> layers;
  Activation hidden = Activation::kSigmoid;

  std::size_t inputs() const { return layers.front(); }
  std::size_t outputs() const { return layers.back(); }

  /// Throws UsageError unless there are >= 2 layers, each of size >= 1.
  void validate() const;
};

/// Number of weights and biases: sum over layer pairs of n_k*n_{k+1}+n_{k+1}.
std::size_t param_count(const MlpTopology& t);

/// One dense layer. `weights` is outputs x inputs, row-major.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> bias;
};

/// Flat layout per layer pair, in order: weight matrix (one row per output
/// neuron), then that layer's biases.
std::vector<DenseLayer> unflatten(const MlpTopology& t,
                                  std::span<const double> params);
std::vector<double> flatten(std::span<const DenseLayer> layers);

/// Affine + activation per hidden layer, affine + softmax at the output.
/// Throws NumericError if any intermediate value is non-finite.
std::vector<double> mlp_forward(const MlpTopology& t,
                                std::span<const double> params,
                                std::span<const double> x);

/// Output-layer pre-softmax values.
std::vector<double> mlp_logits(const MlpTopology& t,
                               std::span<const double> params,
                               std::span<const double> x);

/// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Dense row-major 2-D array.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Grid(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class PoolKind { kMax, kAverage, kSum };

struct ConvLayerSpec {
  Grid kernel;
  double bias = 0.0;
  std::size_t pool_window = 1;
  PoolKind pool = PoolKind::kMax;
};

/// pool_{n x n}(relu(kernel (x) input + bias)).
///
/// The convolution is a stride-1 cross-correlation without padding. Pooling
/// windows do not overlap; trailing rows and columns that cannot fill a
/// window are dropped, so the result is
/// floor((H-kh+1)/n) x floor((W-kw+1)/n).
Grid cnn_layer_forward(const Grid& input, const ConvLayerSpec& spec);

}  // namespace woamlp
