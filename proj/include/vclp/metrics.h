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

#ifndef VCLP_METRICS_H_
#define VCLP_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace vclp {

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

// Precision-recall curve with one point per distinct score, in descending
// score order.
struct PrCurve {
  std::vector<PrPoint> points;
  std::size_t positives = 0;
  std::size_t total = 0;
};

// Items with equal scores are evaluated as one threshold group, so the
// curve does not depend on input order. Throws std::invalid_argument on a
// length mismatch or when no label is positive.
PrCurve PrecisionRecallCurve(std::span<const double> scores,
                             std::span<const std::uint8_t> labels);

// Step-wise area: sum over points of (R_k - R_{k-1}) * P_k with R_0 = 0.
double AveragePrecision(const PrCurve& curve);

inline double Aupr(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  return AveragePrecision(PrecisionRecallCurve(scores, labels));
}

struct RelativeScores {
  // Ratio per kept realization.
  std::vector<double> ratios;
  // Input positions the ratios belong to.
  std::vector<std::size_t> kept;
  // Positions dropped because the baseline AUPR was zero.
  std::vector<std::size_t> dropped;
  // Arithmetic mean of `ratios`, absent when nothing was kept.
  std::optional<double> mean;
};

// Per-realization model/baseline AUPR ratios and their mean. Throws
// std::invalid_argument on a length mismatch.
RelativeScores RelativeToBaseline(std::span<const double> model_auprs,
                                  std::span<const double> baseline_auprs);

// `recall,precision` header then one line per point.
void WritePrCsv(const PrCurve& curve, std::ostream& out);

}  // namespace vclp

#endif  // VCLP_METRICS_H_
