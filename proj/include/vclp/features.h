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

#ifndef VCLP_FEATURES_H_
#define VCLP_FEATURES_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vclp/clock.h"
#include "vclp/table.h"

namespace vclp {

// Features per direction, in column order.
inline constexpr std::size_t kDirectionFeatureCount = 6;
// Two directions per reach.
inline constexpr std::size_t kReachFeatureCount = 2 * kDirectionFeatureCount;

// Duration-weighted mean of the latency ramp since the view was created.
// Each segment between timestamp changes contributes its mean latency
// weighted by its length; the open segment ends at `at`. Returns the latest
// post-update latency when no time has elapsed at all. Throws
// std::invalid_argument when `at` precedes the last update.
double ExpectedLatency(const TemporalView& view, Time at);

struct LatencyRank {
  std::uint32_t current = 0;
  std::uint32_t expected = 0;
};
using RankTable = std::unordered_map<NodeId, LatencyRank>;

// 1-based ranks of every view held by `observer`, ascending by latency with
// ties broken by target index.
RankTable LatencyRanks(const ClockState& state, NodeId observer, Time at);

// Extracts vector-clock features for dyads at one observation instant.
//
// Columns: for each clock (in the given order), for direction fwd (source's
// view on target) then rev (target's view on source): current latency,
// current latency rank, expected latency, expected latency rank, direct
// updates, indirect updates. Absent views get latency (at - stream_start) + 1,
// rank (views held by the observer) + 1 and zero counts.
//
// Rank tables are cached per observer, so one extractor is not thread-safe;
// use one per thread.
class ClockFeatureExtractor {
 public:
  ClockFeatureExtractor(std::vector<const ClockState*> states, Time at,
                        Time stream_start);

  std::vector<std::string> ColumnNames() const;
  std::size_t column_count() const { return states_.size() * kReachFeatureCount; }

  // Writes column_count() values. Throws std::invalid_argument for a
  // self-dyad.
  void Extract(Dyad dyad, std::span<double> out);
  std::vector<double> Extract(Dyad dyad);

  FeatureTable Matrix(std::span<const Dyad> dyads);

 private:
  void ExtractDirection(std::size_t state_index, NodeId observer, NodeId target,
                        std::span<double> out);
  const RankTable& Ranks(std::size_t state_index, NodeId observer);

  std::vector<const ClockState*> states_;
  Time at_;
  double absent_latency_;
  std::vector<std::unordered_map<NodeId, RankTable>> rank_cache_;
};

}  // namespace vclp

#endif  // VCLP_FEATURES_H_
