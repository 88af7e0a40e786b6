/*
 * Copyright 2026 The VCLP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VCLP_TABLE_H_
#define VCLP_TABLE_H_

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vclp/event_stream.h"

namespace vclp {

// An ordered pair of distinct nodes.
struct Dyad {
  NodeId source = 0;
  NodeId target = 0;

  friend bool operator==(const Dyad&, const Dyad&) = default;
  friend auto operator<=>(const Dyad&, const Dyad&) = default;
};

// Dense row-major block of named numeric columns.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t rows() const { return cols() == 0 ? 0 : values_.size() / cols(); }

  std::span<const double> Row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * cols() + col];
  }
  // Throws std::invalid_argument on width mismatch.
  void AddRow(std::span<const double> row);
  void Reserve(std::size_t rows) { values_.reserve(rows * cols()); }

  // Column subset, in the given order.
  FeatureTable Select(std::span<const std::size_t> columns) const;
  // Rows of `left` followed column-wise by rows of `right`.
  static FeatureTable Concat(const FeatureTable& left, const FeatureTable& right);

 private:
  std::vector<std::string> columns_;
  std::vector<double> values_;
};

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// `src,dst,<columns...>` header then one row per dyad, node columns written
// with external identifiers.
void WriteFeatureCsv(std::span<const Dyad> dyads, const FeatureTable& table,
                     const NodeTable& nodes, std::ostream& out);

}  // namespace vclp

#endif  // VCLP_TABLE_H_
