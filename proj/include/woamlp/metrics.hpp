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

// Binary confusion matrices and the seven summary metrics derived from them.

#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "woamlp/error.hpp"

namespace woamlp {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::string positive_class;

  std::uint64_t total() const { return tp + fn + fp + tn; }
};

/// Tallies predictions against truth with `positive_class` as positive and
/// every other label as negative.
ConfusionMatrix confusion(std::span<const std::string> preds,
                          std::span<const std::string> truth,
                          const std::string& positive_class);

/// Metric values are fractions in [0, 1] (mcc and kappa may be negative).
///
/// Zero denominators yield 0 for sen, spe, pre, f1 and mcc; kappa is 0 when
/// the chance agreement is 1.
struct MetricsReport {
  double acc = 0.0;
  double sen = 0.0;
  double spe = 0.0;
  double pre = 0.0;
  double f1 = 0.0;
  double mcc = 0.0;
  double kappa = 0.0;
  ConfusionMatrix cm;
};

MetricsReport metrics_report(const ConfusionMatrix& cm);

std::string report_to_json(const MetricsReport& r);

/// Aligned two-line table of percentages with two decimals, headed by
/// `title` in the first column.
std::string report_to_text(const MetricsReport& r,
                           const std::string& title = "Model");

}  // namespace woamlp
