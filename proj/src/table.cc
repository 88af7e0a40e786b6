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

#include "vclp/table.h"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vclp {

void FeatureTable::AddRow(std::span<const double> row) {
  if (row.size() != cols()) {
    throw std::invalid_argument("row width " + std::to_string(row.size()) +
                                " does not match " + std::to_string(cols()) +
                                " columns");
  }
  values_.insert(values_.end(), row.begin(), row.end());
}

FeatureTable FeatureTable::Select(std::span<const std::size_t> columns) const {
  std::vector<std::string> names;
  for (std::size_t c : columns) names.push_back(columns_.at(c));
  FeatureTable out(std::move(names));
  out.values_.reserve(rows() * columns.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c : columns) out.values_.push_back(at(r, c));
  }
  return out;
}

FeatureTable FeatureTable::Concat(const FeatureTable& left, const FeatureTable& right) {
  if (left.rows() != right.rows()) {
    throw std::invalid_argument("cannot concatenate tables with different row counts");
  }
  std::vector<std::string> names = left.columns_;
  names.insert(names.end(), right.columns_.begin(), right.columns_.end());
  FeatureTable out(std::move(names));
  out.Reserve(left.rows());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    const auto a = left.Row(r);
    const auto b = right.Row(r);
    out.values_.insert(out.values_.end(), a.begin(), a.end());
    out.values_.insert(out.values_.end(), b.begin(), b.end());
  }
  return out;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteFeatureCsv(std::span<const Dyad> dyads, const FeatureTable& table,
                     const NodeTable& nodes, std::ostream& out) {
  out << "src,dst";
  for (const auto& name : table.columns()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < dyads.size(); ++i) {
    out << nodes.Name(dyads[i].source) << ',' << nodes.Name(dyads[i].target);
    for (double v : table.Row(i)) out << ',' << FormatNumber(v);
    out << '\n';
  }
}

}  // namespace vclp
