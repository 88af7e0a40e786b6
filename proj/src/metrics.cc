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

#include "vclp/metrics.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "vclp/table.h"

namespace vclp {

PrCurve PrecisionRecallCurve(std::span<const double> scores,
                             std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  PrCurve curve;
  curve.total = scores.size();
  for (auto l : labels) curve.positives += l != 0;
  if (curve.positives == 0) {
    throw std::invalid_argument("precision-recall curve needs at least one positive");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::size_t true_pos = 0;
  std::size_t seen = 0;
  const double positives = static_cast<double>(curve.positives);
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      true_pos += labels[order[i]] != 0;
      ++seen;
      ++i;
    }
    curve.points.push_back({static_cast<double>(true_pos) / positives,
                            static_cast<double>(true_pos) / static_cast<double>(seen)});
  }
  return curve;
}

double AveragePrecision(const PrCurve& curve) {
  double area = 0.0;
  double previous_recall = 0.0;
  for (const PrPoint& p : curve.points) {
    area += (p.recall - previous_recall) * p.precision;
    previous_recall = p.recall;
  }
  return area;
}

RelativeScores RelativeToBaseline(std::span<const double> model_auprs,
                                  std::span<const double> baseline_auprs) {
  if (model_auprs.size() != baseline_auprs.size()) {
    throw std::invalid_argument("model and baseline AUPR lists differ in length");
  }
  RelativeScores out;
  for (std::size_t i = 0; i < model_auprs.size(); ++i) {
    if (!(baseline_auprs[i] > 0.0)) {
      out.dropped.push_back(i);
      continue;
    }
    out.ratios.push_back(model_auprs[i] / baseline_auprs[i]);
    out.kept.push_back(i);
  }
  if (!out.ratios.empty()) {
    double sum = 0.0;
    for (double r : out.ratios) sum += r;
    out.mean = sum / static_cast<double>(out.ratios.size());
  }
  return out;
}

void WritePrCsv(const PrCurve& curve, std::ostream& out) {
  out << "recall,precision\n";
  for (const PrPoint& p : curve.points) {
    out << FormatNumber(p.recall) << ',' << FormatNumber(p.precision) << '\n';
  }
}

}  // namespace vclp
