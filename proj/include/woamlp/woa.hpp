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

// Whale Optimization Algorithm over a box-bounded continuous domain.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "woamlp/error.hpp"
#include "woamlp/random.hpp"

namespace woamlp {

using Position = std::vector<double>;

/// Objective to minimize. Must be safe to call concurrently when
/// WoaConfig::workers > 1.
using Objective = std::function<double(std::span<const double>)>;

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  /// Same interval in every dimension.
  static Bounds uniform(std::size_t dimension, double lo, double hi) {
    return {std::vector<double>(dimension, lo),
            std::vector<double>(dimension, hi)};
  }
  std::size_t dimension() const { return lower.size(); }
};

struct WoaConfig {
  std::size_t population_size = 30;
  std::size_t max_iterations = 200;
  Bounds bounds;
  /// Shape constant of the logarithmic spiral.
  double spiral_shape = 1.0;
  std::uint64_t seed = 42;
  /// Threads used for fitness evaluation. Results do not depend on it.
  std::size_t workers = 1;

  std::size_t dimension() const { return bounds.dimension(); }
  /// Throws UsageError on an invalid configuration.
  void validate() const;
};

struct WoaState {
  std::size_t iteration = 0;
  double a = 2.0;
  std::vector<Position> positions;
  std::vector<double> fitnesses;
  Position best_position;
  double best_fitness = 0.0;
  std::vector<double> history;
};

struct UpdateCoefficients {
  std::vector<double> A;
  std::vector<double> C;
  double l = 0.0;
  double p = 0.0;
};

/// Which position update an agent took.
enum class UpdateRule { kEncircle, kExplore, kSpiral };

/// a = 2 - 2t/T. Throws UsageError unless 0 <= t < T.
double coefficient_a(std::size_t t, std::size_t T);

/// Draws, in order: one r per dimension for A = 2ar - a, one r per dimension
/// for C = 2r, then l = 2u - 1, then p = u.
UpdateCoefficients sample_coefficients(double a, std::size_t dimension,
                                       RandomSource& rng);

/// p < 0.5 picks encircle (|A| < 1 in every component) or explore;
/// otherwise spiral.
UpdateRule choose_rule(const UpdateCoefficients& k);

/// D = |C.x* - x|, x' = x* - A.D (componentwise).
Position encircle_update(std::span<const double> x,
                         std::span<const double> x_best,
                         std::span<const double> A,
                         std::span<const double> C);

/// x' = |x* - x| e^{bl} cos(2 pi l) + x* (componentwise).
Position spiral_update(std::span<const double> x,
                       std::span<const double> x_best, double b, double l);

/// D = |C.x_rand - x|, x' = x_rand - A.D (componentwise).
Position explore_update(std::span<const double> x,
                        std::span<const double> x_rand,
                        std::span<const double> A,
                        std::span<const double> C);

void clamp(std::span<double> x, const Bounds& bounds);

struct WoaOptions {
  /// Replaces the seeded generator for the update phase (coefficients and
  /// random-agent picks). Initial positions always come from the seed.
  RandomSource* rng = nullptr;
  /// Called after every iteration with the current state.
  std::function<void(const WoaState&)> on_iteration;
  /// Called once per agent update with the agent index and rule taken.
  std::function<void(std::size_t, UpdateRule)> on_update;
};

/// Minimizes `objective` over the configured box. The returned state has
/// exactly max_iterations history entries, non-increasing.
///
/// Throws NumericError if the objective returns a non-finite value.
WoaState optimize(const Objective& objective, const WoaConfig& config,
                  const WoaOptions& options = {});

/// Named test functions for benchmarking: "sphere", "rosenbrock",
/// "rastrigin". Throws UsageError for other names.
Objective benchmark_objective(const std::string& name);

}  // namespace woamlp
