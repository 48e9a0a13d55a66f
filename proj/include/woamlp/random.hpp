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
#include <random>
#include <utility>
#include <vector>

namespace woamlp {

/// Source of uniform draws in [0, 1). The optimizer consumes draws from one
/// stream in a fixed order, so a seeded source makes runs reproducible.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double uniform() = 0;

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }
};

/// mt19937_64 mapped to 53-bit doubles; identical output on every platform.
class SeededSource final : public RandomSource {
 public:
  explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() override {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed cycle of values. Used to force coefficient draws.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<double> cycle)
      : cycle_(std::move(cycle)) {}

  double uniform() override {
    double v = cycle_[pos_];
    pos_ = (pos_ + 1) % cycle_.size();
    return v;
  }

 private:
  std::vector<double> cycle_;
  std::size_t pos_ = 0;
};

}  // namespace woamlp
