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
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "woamlp/metrics.hpp"

using namespace woamlp;

namespace {

ConfusionMatrix cm(std::uint64_t tp, std::uint64_t fn, std::uint64_t fp,
                   std::uint64_t tn) {
  return {tp, fn, fp, tn, "pos"};
}

void check_close(const MetricsReport& r, const MetricsReport& s, double tol) {
  CHECK(std::abs(r.acc - s.acc) <= tol);
  CHECK(std::abs(r.sen - s.sen) <= tol);
  CHECK(std::abs(r.spe - s.spe) <= tol);
  CHECK(std::abs(r.pre - s.pre) <= tol);
  CHECK(std::abs(r.f1 - s.f1) <= tol);
  CHECK(std::abs(r.mcc - s.mcc) <= tol);
  CHECK(std::abs(r.kappa - s.kappa) <= tol);
}

}  // namespace

TEST_CASE("confusion tallies") {
  const std::vector<std::string> truth{"p", "n", "p", "n"};
  const auto same = confusion(truth, truth, "p");
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  CHECK(same.tp == 2);
  CHECK(same.tn == 2);

  const std::vector<std::string> flipped{"n", "p", "n", "p"};
  const auto opposite = confusion(flipped, truth, "p");
  CHECK(opposite.tp == 0);
  CHECK(opposite.tn == 0);

  // Hand tally: positions 0,2,6 tp; 4 fn; 1,8 fp; 3,5,7,9 tn.
  const std::vector<std::string> t10{"p", "n", "p", "n", "p", "n", "p", "n", "n", "n"};
  const std::vector<std::string> p10{"p", "p", "p", "n", "n", "n", "p", "n", "p", "n"};
  const auto c = confusion(p10, t10, "p");
  CHECK(c.tp == 3);
  CHECK(c.fn == 1);
  CHECK(c.fp == 2);
  CHECK(c.tn == 4);
  CHECK(c.tp + c.fn == 4);

  CHECK_THROWS_AS(confusion(p10, truth, "p"), Error);
  CHECK_THROWS_AS(confusion(truth, truth, "q"), Error);
}

TEST_CASE("metrics reproduce the proposed-method row") {
  const MetricsReport r = metrics_report(cm(255, 58, 16, 291));
  CHECK(std::abs(r.acc - 0.8806) < 5e-5);
  CHECK(std::abs(r.sen - 0.8147) < 5e-5);
  CHECK(std::abs(r.spe - 0.9479) < 5e-5);
  CHECK(std::abs(r.pre - 0.9410) < 5e-5);
  CHECK(std::abs(r.f1 - 0.8733) < 5e-5);
  CHECK(std::abs(r.mcc - 0.7687) < 5e-5);
  CHECK(std::abs(r.kappa - 0.7616) < 5e-5);
}

TEST_CASE("metrics reproduce the ResNet-50 row") {
  const MetricsReport r = metrics_report(cm(216, 97, 0, 307));
  CHECK(std::abs(r.acc - 0.8435) < 5e-5);
  CHECK(std::abs(r.sen - 0.6901) < 5e-5);
  CHECK(r.spe == 1.0);
  CHECK(r.pre == 1.0);
  CHECK(std::abs(r.f1 - 0.8166) < 5e-5);
  CHECK(std::abs(r.mcc - 0.7242) < 5e-5);
  CHECK(std::abs(r.kappa - 0.6880) < 5e-5);
}

TEST_CASE("perfect classifier scores one everywhere") {
  const MetricsReport r = metrics_report(cm(10, 0, 0, 10));
  for (double v : {r.acc, r.sen, r.spe, r.pre, r.f1, r.mcc, r.kappa}) {
    CHECK(v == 1.0);
  }
}

TEST_CASE("zero-denominator conventions") {
  const MetricsReport all_neg = metrics_report(cm(0, 0, 0, 5));
  CHECK(all_neg.acc == 1.0);
  CHECK(all_neg.sen == 0.0);
  CHECK(all_neg.pre == 0.0);
  CHECK(all_neg.f1 == 0.0);
  CHECK(all_neg.mcc == 0.0);
  CHECK(all_neg.kappa == 0.0);
  CHECK(all_neg.spe == 1.0);
  CHECK_THROWS_AS(metrics_report(cm(0, 0, 0, 0)), Error);
}

TEST_CASE("metric properties on random matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> count(0, 400);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConfusionMatrix c = cm(count(rng), count(rng), count(rng), count(rng));
    if (c.total() == 0) continue;
    const MetricsReport r = metrics_report(c);
    const auto o = woamlp::testing::metrics_oracle(
        static_cast<double>(c.tp), static_cast<double>(c.fn),
        static_cast<double>(c.fp), static_cast<double>(c.tn));
    CHECK(std::abs(r.kappa - o.kappa) < 1e-12);

    if (r.pre + r.sen > 0) {
      CHECK(std::abs(r.f1 - 2 * r.pre * r.sen / (r.pre + r.sen)) < 1e-12);
    }
    CHECK(r.mcc >= -1.0);
    CHECK(r.mcc <= 1.0);
    const double n = static_cast<double>(c.total());
    const double ra = (static_cast<double>((c.tp + c.fp) * (c.tp + c.fn)) +
                       static_cast<double>((c.fn + c.tn) * (c.fp + c.tn))) /
                      (n * n);
    if (ra > 0 && ra < 1) {
      CHECK(r.kappa <= r.acc + 1e-15);
      if (r.acc < 1) CHECK(r.kappa < r.acc);
    }

    const MetricsReport swapped = metrics_report(cm(c.tn, c.fp, c.fn, c.tp));
    CHECK(std::abs(swapped.acc - r.acc) < 1e-12);
    CHECK(std::abs(swapped.mcc - r.mcc) < 1e-12);
    CHECK(std::abs(swapped.kappa - r.kappa) < 1e-12);
    CHECK(std::abs(swapped.sen - r.spe) < 1e-12);
    CHECK(std::abs(swapped.spe - r.sen) < 1e-12);

    const std::uint64_t k = 1 + trial % 7;
    check_close(metrics_report(cm(k * c.tp, k * c.fn, k * c.fp, k * c.tn)), r,
                1e-12);
  }
}

TEST_CASE("mcc is one exactly when there are no errors") {
  CHECK(metrics_report(cm(3, 0, 0, 4)).mcc == 1.0);
  CHECK(metrics_report(cm(3, 1, 0, 4)).mcc < 1.0);
  CHECK(metrics_report(cm(3, 0, 0, 0)).mcc == 0.0);
}

TEST_CASE("report serialization") {
  const MetricsReport r = metrics_report(cm(255, 58, 16, 291));
  const std::string text = report_to_text(r, "Proposed Method");
  CHECK(text.find("88.06") != std::string::npos);
  CHECK(text.find("76.16") != std::string::npos);
  CHECK(text.find("Kappa") != std::string::npos);
  const std::string json = report_to_json(r);
  CHECK(json.find("\"tp\": 255") != std::string::npos);
  CHECK(json.find("\"kappa\"") != std::string::npos);
}
