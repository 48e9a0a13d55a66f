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

#include "woamlp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace woamlp {
namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

ConfusionMatrix confusion(std::span<const std::string> preds,
                          std::span<const std::string> truth,
                          const std::string& positive_class) {
  if (preds.size() != truth.size()) {
    throw DataError("prediction and truth lists differ in length");
  }
  if (preds.empty()) throw DataError("confusion matrix needs samples");
  const bool known =
      std::find(truth.begin(), truth.end(), positive_class) != truth.end() ||
      std::find(preds.begin(), preds.end(), positive_class) != preds.end();
  if (!known) {
    throw DataError("positive class '" + positive_class +
                    "' does not occur in the labels");
  }
  ConfusionMatrix cm;
  cm.positive_class = positive_class;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool actual = truth[i] == positive_class;
    const bool predicted = preds[i] == positive_class;
    if (actual) {
      ++(predicted ? cm.tp : cm.fn);
    } else {
      ++(predicted ? cm.fp : cm.tn);
    }
  }
  return cm;
}

MetricsReport metrics_report(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("confusion matrix is empty");
  const auto tp = static_cast<double>(cm.tp);
  const auto fn = static_cast<double>(cm.fn);
  const auto fp = static_cast<double>(cm.fp);
  const auto tn = static_cast<double>(cm.tn);
  const double total = tp + fn + fp + tn;

  MetricsReport r;
  r.cm = cm;
  r.acc = (tp + tn) / total;
  r.sen = ratio(tp, tp + fn);
  r.spe = ratio(tn, tn + fp);
  r.pre = ratio(tp, tp + fp);
  r.f1 = ratio(2.0 * tp, 2.0 * tp + fn + fp);

  const double factors = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  r.mcc = factors > 0.0 ? (tp * tn - fp * fn) / std::sqrt(factors) : 0.0;

  const double chance =
      ((tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)) / (total * total);
  r.kappa = chance < 1.0 ? (r.acc - chance) / (1.0 - chance) : 0.0;
  return r;
}

std::string report_to_json(const MetricsReport& r) {
  nlohmann::json j{{"acc", r.acc},
                   {"sen", r.sen},
                   {"spe", r.spe},
                   {"pre", r.pre},
                   {"f1", r.f1},
                   {"mcc", r.mcc},
                   {"kappa", r.kappa},
                   {"tp", r.cm.tp},
                   {"fn", r.cm.fn},
                   {"fp", r.cm.fp},
                   {"tn", r.cm.tn},
                   {"positive_class", r.cm.positive_class}};
  return j.dump(2);
}

std::string report_to_text(const MetricsReport& r, const std::string& title) {
  const int width = std::max<int>(16, static_cast<int>(title.size()) + 2);
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-*s%8s%8s%8s%8s%10s%8s%8s\n", width,
                "Method", "ACC", "SEN", "SPE", "PRE", "F1-score", "MCC",
                "Kappa");
  out += line;
  std::snprintf(line, sizeof line,
                "%-*s%8.2f%8.2f%8.2f%8.2f%10.2f%8.2f%8.2f\n", width,
                title.c_str(), 100 * r.acc, 100 * r.sen, 100 * r.spe,
                100 * r.pre, 100 * r.f1, 100 * r.mcc, 100 * r.kappa);
  out += line;
  return out;
}

}  // namespace woamlp
