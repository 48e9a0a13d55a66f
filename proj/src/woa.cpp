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

#include "woamlp/woa.hpp"

#include <algorithm>
#include <exception>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace woamlp {
namespace {

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DataError("dimension mismatch: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

// Evaluates every position into `out`. Each worker owns a contiguous block
// of indices, so the result is independent of the worker count.
void evaluate_all(const Objective& objective,
                  const std::vector<Position>& positions,
                  std::vector<double>& out, std::size_t workers) {
  const std::size_t n = positions.size();
  out.resize(n);
  workers = std::clamp<std::size_t>(workers, 1, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = objective(positions[i]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w * n / workers; i < (w + 1) * n / workers;
                 ++i) {
              out[i] = objective(positions[i]);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(out[i])) {
      throw NumericError("objective returned a non-finite value for agent " +
                         std::to_string(i));
    }
  }
}

}  // namespace

void WoaConfig::validate() const {
  if (population_size < 2) throw UsageError("population size must be >= 2");
  if (max_iterations < 1) throw UsageError("iteration count must be >= 1");
  if (bounds.lower.empty()) throw UsageError("dimension must be >= 1");
  if (bounds.lower.size() != bounds.upper.size()) {
    throw UsageError("lower and upper bounds differ in length");
  }
  for (std::size_t i = 0; i < bounds.lower.size(); ++i) {
    const double lo = bounds.lower[i];
    const double hi = bounds.upper[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw UsageError("bounds must be finite with lower < upper");
    }
  }
  if (!(spiral_shape > 0.0) || !std::isfinite(spiral_shape)) {
    throw UsageError("spiral shape must be positive");
  }
}

double coefficient_a(std::size_t t, std::size_t T) {
  if (t >= T) {
    throw UsageError("iteration " + std::to_string(t) + " outside [0, " +
                     std::to_string(T) + ")");
  }
  return 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(T);
}

UpdateCoefficients sample_coefficients(double a, std::size_t dimension,
                                       RandomSource& rng) {
  UpdateCoefficients k;
  k.A.resize(dimension);
  k.C.resize(dimension);
  for (double& v : k.A) v = 2.0 * a * rng.uniform() - a;
  for (double& v : k.C) v = 2.0 * rng.uniform();
  k.l = 2.0 * rng.uniform() - 1.0;
  k.p = rng.uniform();
  return k;
}

UpdateRule choose_rule(const UpdateCoefficients& k) {
  if (k.p >= 0.5) return UpdateRule::kSpiral;
  const bool small = std::all_of(k.A.begin(), k.A.end(),
                                 [](double v) { return std::abs(v) < 1.0; });
  return small ? UpdateRule::kEncircle : UpdateRule::kExplore;
}

Position encircle_update(std::span<const double> x,
                         std::span<const double> x_best,
                         std::span<const double> A,
                         std::span<const double> C) {
  check_dims(x.size(), x_best.size());
  check_dims(x.size(), A.size());
  check_dims(x.size(), C.size());
  Position out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dist = std::abs(C[i] * x_best[i] - x[i]);
    out[i] = x_best[i] - A[i] * dist;
  }
  return out;
}

Position spiral_update(std::span<const double> x,
                       std::span<const double> x_best, double b, double l) {
  check_dims(x.size(), x_best.size());
  const double factor = std::exp(b * l) * std::cos(2.0 * std::numbers::pi * l);
  Position out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::abs(x_best[i] - x[i]) * factor + x_best[i];
  }
  return out;
}

Position explore_update(std::span<const double> x,
                        std::span<const double> x_rand,
                        std::span<const double> A,
                        std::span<const double> C) {
  return encircle_update(x, x_rand, A, C);
}

void clamp(std::span<double> x, const Bounds& bounds) {
  check_dims(x.size(), bounds.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], bounds.lower[i], bounds.upper[i]);
  }
}

WoaState optimize(const Objective& objective, const WoaConfig& config,
                  const WoaOptions& options) {
  config.validate();
  SeededSource seeded(config.seed);
  const std::size_t dim = config.dimension();
  const std::size_t pop = config.population_size;

  WoaState state;
  state.positions.assign(pop, Position(dim));
  for (auto& agent : state.positions) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double lo = config.bounds.lower[i];
      const double hi = config.bounds.upper[i];
      agent[i] = lo + (hi - lo) * seeded.uniform();
    }
  }
  evaluate_all(objective, state.positions, state.fitnesses, config.workers);
  std::size_t best = 0;
  for (std::size_t j = 1; j < pop; ++j) {
    if (state.fitnesses[j] < state.fitnesses[best]) best = j;
  }
  state.best_position = state.positions[best];
  state.best_fitness = state.fitnesses[best];
  state.history.reserve(config.max_iterations);

  RandomSource& rng = options.rng ? *options.rng : seeded;

  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    state.iteration = t;
    state.a = coefficient_a(t, config.max_iterations);
    for (std::size_t j = 0; j < pop; ++j) {
      const auto k = sample_coefficients(state.a, dim, rng);
      const UpdateRule rule = choose_rule(k);
      Position& x = state.positions[j];
      switch (rule) {
        case UpdateRule::kEncircle:
          x = encircle_update(x, state.best_position, k.A, k.C);
          break;
        case UpdateRule::kExplore: {
          // Copy: the random agent may be j itself.
          const Position x_rand = state.positions[rng.index(pop)];
          x = explore_update(x, x_rand, k.A, k.C);
          break;
        }
        case UpdateRule::kSpiral:
          x = spiral_update(x, state.best_position, config.spiral_shape, k.l);
          break;
      }
      clamp(x, config.bounds);
      if (options.on_update) options.on_update(j, rule);
    }
    evaluate_all(objective, state.positions, state.fitnesses, config.workers);
    for (std::size_t j = 0; j < pop; ++j) {
      if (state.fitnesses[j] < state.best_fitness) {
        state.best_fitness = state.fitnesses[j];
        state.best_position = state.positions[j];
      }
    }
    state.history.push_back(state.best_fitness);
    if (options.on_iteration) options.on_iteration(state);
  }
  state.iteration = config.max_iterations;
  return state;
}

Objective benchmark_objective(const std::string& name) {
  if (name == "sphere") {
    return [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    };
  }
  if (name == "rosenbrock") {
    return [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double u = x[i + 1] - x[i] * x[i];
        const double v = 1.0 - x[i];
        s += 100.0 * u * u + v * v;
      }
      return s;
    };
  }
  if (name == "rastrigin") {
    return [](std::span<const double> x) {
      double s = 10.0 * static_cast<double>(x.size());
      for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
      return s;
    };
  }
  throw UsageError("unknown objective '" + name + "'");
}

}  // namespace woamlp
