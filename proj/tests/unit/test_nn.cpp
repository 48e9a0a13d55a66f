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

#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "woamlp/nn.hpp"

using namespace woamlp;

TEST_CASE("param_count") {
  CHECK(param_count({{2, 2, 1}}) == 9);
  CHECK(param_count({{1, 1}}) == 2);
  CHECK(param_count({{6144, 20, 2}}) == 122942);
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(MlpTopology{{3}}.validate(), Error);
  CHECK_THROWS_AS((MlpTopology{{3, 0, 2}}.validate()), Error);
  CHECK_NOTHROW(MlpTopology{{3, 2}}.validate());
  CHECK(activation_from_string("tanh") == Activation::kTanh);
  CHECK_THROWS_AS(activation_from_string("gelu"), Error);
}

TEST_CASE("unflatten layout") {
  const std::vector<double> p{0.5, -0.25};
  const auto layers = unflatten({{1, 1}}, p);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0].weights == std::vector<double>{0.5});
  CHECK(layers[0].bias == std::vector<double>{-0.25});

  std::vector<double> nine(9);
  std::iota(nine.begin(), nine.end(), 0.0);
  const auto two = unflatten({{2, 2, 1}}, nine);
  CHECK(two[0].weights == std::vector<double>{0, 1, 2, 3});
  CHECK(two[0].bias == std::vector<double>{4, 5});
  CHECK(two[1].weights == std::vector<double>{6, 7});
  CHECK(two[1].bias == std::vector<double>{8});
  CHECK(flatten(two) == nine);

  CHECK_THROWS_AS(unflatten({{2, 2, 1}}, std::vector<double>(8)), Error);
}

TEST_CASE("flatten/unflatten round-trip on random topologies") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> depth(2, 5), width(1, 9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    MlpTopology t;
    for (std::size_t k = depth(rng); k > 0; --k) t.layers.push_back(width(rng));
    std::vector<double> p(param_count(t));
    for (double& v : p) v = g(rng);
    CHECK(flatten(unflatten(t, p)) == p);
  }
}

TEST_CASE("mlp_forward on forced cases") {
  const auto out = mlp_forward({{1, 2}}, std::vector<double>(4, 0.0),
                               std::vector<double>{3.7});
  CHECK(out[0] == 0.5);
  CHECK(out[1] == 0.5);

  const auto single = mlp_forward({{1, 1, 1}}, std::vector<double>(4, 0.0),
                                  std::vector<double>{-2});
  CHECK(single == std::vector<double>{1.0});
  const auto hidden = mlp_logits({{1, 1, 1}},
                                 std::vector<double>{0, 0, 1, 0},
                                 std::vector<double>{-2});
  CHECK(hidden[0] == 0.5);
}

TEST_CASE("mlp_forward matches a hand-computed 2-2-2 pass") {
  // W1 = [[0.5,-1],[1,0.25]], b1 = [0,-0.5], W2 = [[1,-1],[-0.5,2]],
  // b2 = [0.1,-0.1], sigmoid hidden, x = (1, 2).
  const std::vector<double> p{0.5, -1, 1, 0.25, 0, -0.5, 1, -1, -0.5, 2, 0.1, -0.1};
  const auto out = mlp_forward({{2, 2, 2}}, p, std::vector<double>{1, 2});
  CHECK(std::abs(out[0] - 0.15193075258799235) < 1e-9);
  CHECK(std::abs(out[1] - 0.8480692474120075) < 1e-9);
}

TEST_CASE("mlp_forward errors") {
  const MlpTopology t{{2, 2}};
  CHECK_THROWS_AS(mlp_forward(t, std::vector<double>(6), std::vector<double>{1}),
                  Error);
  CHECK_THROWS_AS(mlp_forward(t, std::vector<double>(5), std::vector<double>{1, 2}),
                  Error);
  std::vector<double> huge(6, 1e308);
  try {
    mlp_forward({{2, 2}, Activation::kRelu}, huge, std::vector<double>{1e308, 1e308});
    FAIL("expected NumericError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNumeric);
  }
}

TEST_CASE("softmax properties and determinism") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> z(1 + trial % 6);
    for (double& v : z) v = g(rng);
    const auto s = softmax(z);
    CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) < 1e-9);
    for (double v : s) CHECK(v > 0.0);
    std::vector<double> shifted = z;
    for (double& v : shifted) v += 17.5;
    const auto s2 = softmax(shifted);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - s2[i]) < 1e-9);
  }

  const MlpTopology t{{3, 4, 2}, Activation::kTanh};
  std::vector<double> p(param_count(t));
  for (double& v : p) v = g(rng);
  const std::vector<double> x{0.3, -1.2, 2.0};
  CHECK(mlp_forward(t, p, x) == mlp_forward(t, p, x));
}

TEST_CASE("raising the true class output weight raises its probability") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  const MlpTopology t{{3, 4, 2}};
  const std::size_t w2 = 3 * 4 + 4;  // first output-layer weight
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(param_count(t));
    for (double& v : p) v = g(rng);
    const std::vector<double> x{g(rng), g(rng), g(rng)};
    // Hidden units are sigmoid, so every weight into output 0 multiplies a
    // positive activation.
    const double before = mlp_forward(t, p, x)[0];
    p[w2] += 1.0;
    CHECK(mlp_forward(t, p, x)[0] > before);
  }
}

TEST_CASE("cnn_layer_forward hand cases") {
  ConvLayerSpec identity{Grid(1, 1, 1.0), 0.0, 1, PoolKind::kMax};
  const Grid in(2, 2, {1, -2, 3, 4});
  CHECK(cnn_layer_forward(in, identity) == Grid(2, 2, {1, 0, 3, 4}));

  ConvLayerSpec pooled = identity;
  pooled.pool_window = 2;
  CHECK(cnn_layer_forward(in, pooled) == Grid(1, 1, std::vector<double>{4}));

  std::vector<double> ramp(16);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  ConvLayerSpec avg{Grid(2, 2, 0.25), -1.0, 2, PoolKind::kAverage};
  const Grid out = cnn_layer_forward(Grid(4, 4, ramp), avg);
  CHECK(out.rows() == 1);
  CHECK(out.cols() == 1);
  CHECK(out(0, 0) == 4.0);
}

TEST_CASE("cnn_layer_forward output is non-negative and shaped by truncation") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    Grid in(7, 9);
    for (std::size_t r = 0; r < 7; ++r)
      for (std::size_t c = 0; c < 9; ++c) in(r, c) = g(rng);
    Grid k(2, 3);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) k(r, c) = g(rng);
    const PoolKind kind = trial % 2 ? PoolKind::kMax : PoolKind::kAverage;
    const Grid out = cnn_layer_forward(in, {k, g(rng), 2, kind});
    CHECK(out.rows() == 3);  // floor(6 / 2)
    CHECK(out.cols() == 3);  // floor(7 / 2)
    for (double v : out.data()) CHECK(v >= 0.0);
  }
}

TEST_CASE("cnn_layer_forward errors") {
  const Grid in(3, 3, 1.0);
  CHECK_THROWS_AS(cnn_layer_forward(in, {Grid(4, 1, 1.0), 0, 1, PoolKind::kMax}),
                  Error);
  CHECK_THROWS_AS(cnn_layer_forward(in, {Grid(2, 2, 1.0), 0, 3, PoolKind::kMax}),
                  Error);
}
