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

#include "woamlp/feature_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "woamlp/random.hpp"

namespace woamlp {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

FeatureTable::FeatureTable(std::vector<std::string> sample_ids,
                           std::vector<double> features, std::size_t cols,
                           std::vector<std::string> labels,
                           std::vector<std::string> class_names)
    : ids_(std::move(sample_ids)),
      features_(std::move(features)),
      cols_(cols),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
  if (cols_ == 0) throw DataError("feature table needs at least one column");
  if (labels_.size() != ids_.size() ||
      features_.size() != ids_.size() * cols_) {
    throw DataError("feature table row counts disagree");
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw DataError("feature table has non-finite value");
  }
  if (class_names_.empty()) {
    std::set<std::string> names(labels_.begin(), labels_.end());
    class_names_.assign(names.begin(), names.end());
  } else {
    std::set<std::string> names(class_names_.begin(), class_names_.end());
    if (names.size() != class_names_.size()) {
      throw DataError("duplicate class name");
    }
  }
  std::unordered_map<std::string, std::size_t> lookup;
  for (std::size_t c = 0; c < class_names_.size(); ++c) {
    lookup.emplace(class_names_[c], c);
  }
  label_index_.reserve(labels_.size());
  for (const auto& label : labels_) {
    auto it = lookup.find(label);
    if (it == lookup.end()) {
      throw DataError("label '" + label + "' is not a known class");
    }
    label_index_.push_back(it->second);
  }
}

std::vector<std::size_t> FeatureTable::class_counts() const {
  std::vector<std::size_t> counts(class_names_.size(), 0);
  for (std::size_t c : label_index_) ++counts[c];
  return counts;
}

FeatureTable FeatureTable::subset(std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<std::string> labels;
  ids.reserve(indices.size());
  labels.reserve(indices.size());
  values.reserve(indices.size() * cols_);
  for (std::size_t i : indices) {
    ids.push_back(ids_.at(i));
    labels.push_back(labels_[i]);
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureTable(std::move(ids), std::move(values), cols_,
                      std::move(labels), class_names_);
}

FeatureTable load_feature_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw TableError(TableFault::kMissingFile,
                     "cannot open feature file " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw TableError(TableFault::kEmptyTable,
                     path.string() + ": file is empty");
  }
  auto header = split_commas(trim(line));
  if (header.size() < 3 || trim(header[0]) != "id" ||
      trim(header[1]) != "label") {
    throw TableError(TableFault::kBadHeader,
                     where(path, 1) + "header must be id,label,f0,...");
  }
  const std::size_t cols = header.size() - 2;

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<double> values;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    auto cells = split_commas(text);
    if (cells.size() != cols + 2) {
      throw TableError(TableFault::kRaggedRow,
                       where(path, line_no) + "expected " +
                           std::to_string(cols + 2) + " cells, found " +
                           std::to_string(cells.size()));
    }
    std::string id(trim(cells[0]));
    if (!seen.insert(id).second) {
      throw TableError(TableFault::kDuplicateId,
                       where(path, line_no) + "duplicate sample id '" + id +
                           "'");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      std::string_view cell = trim(cells[j + 2]);
      double v = 0.0;
      auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || end != cell.data() + cell.size() ||
          cell.empty()) {
        throw TableError(TableFault::kNonNumeric,
                         where(path, line_no) + "non-numeric cell '" +
                             std::string(cell) + "'");
      }
      if (!std::isfinite(v)) {
        throw TableError(TableFault::kNonFinite,
                         where(path, line_no) + "non-finite cell '" +
                             std::string(cell) + "'");
      }
      values.push_back(v);
    }
    ids.push_back(std::move(id));
    labels.emplace_back(trim(cells[1]));
  }
  if (ids.empty()) {
    throw TableError(TableFault::kEmptyTable,
                     path.string() + ": no data rows");
  }
  return FeatureTable(std::move(ids), std::move(values), cols,
                      std::move(labels));
}

void save_feature_table(const FeatureTable& table,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "id,label";
  for (std::size_t j = 0; j < table.cols(); ++j) out << ",f" << j;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out << table.sample_ids()[i] << ',' << table.labels()[i];
    for (double v : table.row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

FeatureTable fuse(const FeatureTable& a, const FeatureTable& b) {
  if (a.rows() != b.rows()) {
    throw DataError("cannot fuse: tables have " + std::to_string(a.rows()) +
                    " and " + std::to_string(b.rows()) + " samples");
  }
  std::unordered_map<std::string, std::size_t> b_rows;
  for (std::size_t i = 0; i < b.rows(); ++i) b_rows.emplace(b.sample_ids()[i], i);

  const std::size_t cols = a.cols() + b.cols();
  std::vector<double> values;
  values.reserve(a.rows() * cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::string& id = a.sample_ids()[i];
    auto it = b_rows.find(id);
    if (it == b_rows.end()) {
      throw DataError("cannot fuse: sample '" + id + "' missing from second table");
    }
    if (b.labels()[it->second] != a.labels()[i]) {
      throw DataError("cannot fuse: sample '" + id + "' labeled '" +
                      a.labels()[i] + "' vs '" + b.labels()[it->second] + "'");
    }
    auto ra = a.row(i);
    auto rb = b.row(it->second);
    values.insert(values.end(), ra.begin(), ra.end());
    values.insert(values.end(), rb.begin(), rb.end());
  }
  return FeatureTable(a.sample_ids(), std::move(values), cols, a.labels());
}

Normalizer fit_normalizer(const FeatureTable& table) {
  if (table.empty()) throw DataError("cannot fit normalizer on empty table");
  const std::size_t d = table.cols();
  const auto n = static_cast<double>(table.rows());
  Normalizer out{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < table.rows(); ++i) {
    auto r = table.row(i);
    for (std::size_t j = 0; j < d; ++j) out.means[j] += r[j];
  }
  for (double& m : out.means) m /= n;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    auto r = table.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      double dev = r[j] - out.means[j];
      out.stddevs[j] += dev * dev;
    }
  }
  for (double& s : out.stddevs) {
    s = std::sqrt(s / n);
    if (!(s > 0.0)) s = 1.0;
  }
  return out;
}

void normalize_row(std::span<double> x, const Normalizer& n) {
  if (x.size() != n.means.size() || n.stddevs.size() != n.means.size()) {
    throw DataError("normalizer expects " + std::to_string(n.means.size()) +
                    " features, got " + std::to_string(x.size()));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = (x[j] - n.means[j]) / n.stddevs[j];
  }
}

FeatureTable apply_normalizer(const FeatureTable& table, const Normalizer& n) {
  if (table.cols() != n.means.size()) {
    throw DataError("normalizer expects " + std::to_string(n.means.size()) +
                    " columns, table has " + std::to_string(table.cols()));
  }
  std::vector<double> values = table.features();
  for (std::size_t i = 0; i < table.rows(); ++i) {
    normalize_row(std::span(values).subspan(i * table.cols(), table.cols()), n);
  }
  return FeatureTable(table.sample_ids(), std::move(values), table.cols(),
                      table.labels(), table.class_names());
}

std::string normalizer_to_json(const Normalizer& n) {
  nlohmann::json j{{"means", n.means}, {"stddevs", n.stddevs}};
  return j.dump();
}

Normalizer normalizer_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Normalizer n{j.at("means").get<std::vector<double>>(),
                 j.at("stddevs").get<std::vector<double>>()};
    if (n.means.size() != n.stddevs.size() || n.means.empty()) {
      throw DataError("normalizer means/stddevs length mismatch");
    }
    for (double s : n.stddevs) {
      if (!(s > 0.0) || !std::isfinite(s)) {
        throw DataError("normalizer stddevs must be positive");
      }
    }
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed normalizer JSON: ") + e.what());
  }
}

Split split(const FeatureTable& table, double test_fraction,
            std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw UsageError("test fraction must lie in (0, 1)");
  }
  const std::size_t classes = table.class_names().size();
  std::vector<std::vector<std::size_t>> by_class(classes);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    by_class[table.label_index(i)].push_back(i);
  }

  SeededSource rng(seed);
  std::vector<std::size_t> test_idx;
  std::vector<std::size_t> train_idx;
  for (std::size_t c = 0; c < classes; ++c) {
    auto& members = by_class[c];
    const std::size_t n = members.size();
    if (n == 0) continue;
    if (n < 2) {
      throw DataError("class '" + table.class_names()[c] +
                      "' has too few samples to stratify");
    }
    // The epsilon absorbs products like 0.3 * 10 = 2.9999999999999996.
    auto want = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(n) + 1e-9));
    want = std::clamp<std::size_t>(want, 1, n - 1);
    // Fisher-Yates, first `want` entries go to the test side.
    for (std::size_t k = 0; k < want; ++k) {
      std::size_t pick = k + rng.index(n - k);
      std::swap(members[k], members[pick]);
    }
    test_idx.insert(test_idx.end(), members.begin(), members.begin() + want);
    train_idx.insert(train_idx.end(), members.begin() + want, members.end());
  }
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  return {table.subset(train_idx), table.subset(test_idx)};
}

}  // namespace woamlp
