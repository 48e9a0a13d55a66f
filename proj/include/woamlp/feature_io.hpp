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

// Labeled feature tables: CSV ingestion, fusion of two tables, z-score
// normalization and stratified splitting.
//
// CSV layout: header `id,label,f0,...,f{d-1}`, then one row per sample.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "woamlp/error.hpp"

namespace woamlp {

/// Reasons a feature file can be rejected; each is reported separately.
enum class TableFault {
  kMissingFile,
  kBadHeader,
  kRaggedRow,
  kNonNumeric,
  kNonFinite,
  kDuplicateId,
  kEmptyTable,
};

class TableError : public Error {
 public:
  TableError(TableFault fault, const std::string& what)
      : Error(fault == TableFault::kMissingFile ? ErrorKind::kIo
                                                : ErrorKind::kData,
              what),
        fault_(fault) {}

  TableFault fault() const noexcept { return fault_; }

 private:
  TableFault fault_;
};

/// Rows of real-valued features with one class label per row.
///
/// Features are stored row-major. `class_names` is sorted and contains every
/// label exactly once; `label_index(i)` is the position of row i's label in it.
class FeatureTable {
 public:
  FeatureTable() = default;

  /// Validates all invariants; throws DataError on violation. When
  /// `class_names` is empty it is derived from the labels.
  FeatureTable(std::vector<std::string> sample_ids,
               std::vector<double> features, std::size_t cols,
               std::vector<std::string> labels,
               std::vector<std::string> class_names = {});

  std::size_t rows() const noexcept { return ids_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * cols_, cols_};
  }
  const std::vector<double>& features() const noexcept { return features_; }
  const std::vector<std::string>& sample_ids() const noexcept { return ids_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }
  std::size_t label_index(std::size_t i) const { return label_index_[i]; }

  /// Number of rows per class, aligned with class_names().
  std::vector<std::size_t> class_counts() const;

  /// Rows selected by index, in the given order. Class names are kept.
  FeatureTable subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> features_;
  std::size_t cols_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::string> class_names_;
  std::vector<std::size_t> label_index_;
};

FeatureTable load_feature_table(const std::filesystem::path& path);

/// Writes with 17 significant digits so values reload exactly.
void save_feature_table(const FeatureTable& table,
                        const std::filesystem::path& path);

/// Column-wise concatenation, `a` columns first. Row order follows `a`.
FeatureTable fuse(const FeatureTable& a, const FeatureTable& b);

struct Normalizer {
  std::vector<double> means;
  std::vector<double> stddevs;
};

/// Per-column mean and population standard deviation. Columns with zero
/// variance get stddev 1.
Normalizer fit_normalizer(const FeatureTable& table);

FeatureTable apply_normalizer(const FeatureTable& table, const Normalizer& n);

/// In-place transform of a single feature vector.
void normalize_row(std::span<double> x, const Normalizer& n);

std::string normalizer_to_json(const Normalizer& n);
Normalizer normalizer_from_json(const std::string& text);

struct Split {
  FeatureTable train;
  FeatureTable test;
};

/// Stratified split. Each class sends floor(test_fraction * n_class) rows to
/// the test side, clamped to [1, n_class - 1]. Both sides keep file order.
Split split(const FeatureTable& table, double test_fraction,
            std::uint64_t seed);

}  // namespace woamlp
