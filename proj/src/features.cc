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

#include "vclp/features.h"

#include <algorithm>
#include <stdexcept>

namespace vclp {

double ExpectedLatency(const TemporalView& view, Time at) {
  if (at < view.last_update_time) {
    throw std::invalid_argument("expected latency queried before the last update");
  }
  const Time open = at - view.last_update_time;
  const Time weight = view.accumulated_duration + open;
  if (weight == 0) return static_cast<double>(view.last_update_latency);
  const std::int64_t twice_area =
      view.twice_latency_area + 2 * open * view.last_update_latency + open * open;
  return static_cast<double>(twice_area) / (2.0 * static_cast<double>(weight));
}

RankTable LatencyRanks(const ClockState& state, NodeId observer, Time at) {
  if (at < state.now()) throw std::invalid_argument("ranks queried before clock time");
  const ViewMap& views = state.ViewsOf(observer);
  struct Entry {
    NodeId target;
    Time current;
    double expected;
  };
  std::vector<Entry> entries;
  entries.reserve(views.size());
  for (const auto& [target, view] : views) {
    entries.push_back({target, at - view.timestamp, ExpectedLatency(view, at)});
  }

  RankTable ranks;
  ranks.reserve(entries.size());
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.current != b.current ? a.current < b.current : a.target < b.target;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ranks[entries[i].target].current = static_cast<std::uint32_t>(i + 1);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.expected != b.expected ? a.expected < b.expected : a.target < b.target;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ranks[entries[i].target].expected = static_cast<std::uint32_t>(i + 1);
  }
  return ranks;
}

ClockFeatureExtractor::ClockFeatureExtractor(std::vector<const ClockState*> states,
                                             Time at, Time stream_start)
    : states_(std::move(states)),
      at_(at),
      absent_latency_(static_cast<double>(at - stream_start) + 1.0),
      rank_cache_(states_.size()) {
  for (const ClockState* state : states_) {
    if (!state->quiesced()) throw std::logic_error("feature extraction needs quiesced clocks");
    if (at < state->now()) {
      throw std::invalid_argument("observation instant precedes clock time");
    }
  }
}

std::vector<std::string> ClockFeatureExtractor::ColumnNames() const {
  static constexpr const char* kFeatures[kDirectionFeatureCount] = {
      "cur_lat", "cur_rank", "exp_lat", "exp_rank", "direct", "indirect"};
  std::vector<std::string> names;
  for (const ClockState* state : states_) {
    for (const char* direction : {"fwd", "rev"}) {
      for (const char* feature : kFeatures) {
        names.push_back("mu" + state->reach().ToString() + "_" + direction + "_" +
                        feature);
      }
    }
  }
  return names;
}

const RankTable& ClockFeatureExtractor::Ranks(std::size_t state_index, NodeId observer) {
  auto& cache = rank_cache_[state_index];
  auto it = cache.find(observer);
  if (it == cache.end()) {
    it = cache.emplace(observer, LatencyRanks(*states_[state_index], observer, at_)).first;
  }
  return it->second;
}

void ClockFeatureExtractor::ExtractDirection(std::size_t state_index, NodeId observer,
                                             NodeId target, std::span<double> out) {
  const ClockState& state = *states_[state_index];
  const TemporalView* view = state.View(observer, target);
  if (view == nullptr) {
    const double absent_rank =
        static_cast<double>(state.ViewsOf(observer).size()) + 1.0;
    out[0] = absent_latency_;
    out[1] = absent_rank;
    out[2] = absent_latency_;
    out[3] = absent_rank;
    out[4] = 0.0;
    out[5] = 0.0;
    return;
  }
  const LatencyRank rank = Ranks(state_index, observer).at(target);
  out[0] = static_cast<double>(at_ - view->timestamp);
  out[1] = rank.current;
  out[2] = ExpectedLatency(*view, at_);
  out[3] = rank.expected;
  out[4] = view->direct_count;
  out[5] = view->indirect_count;
}

void ClockFeatureExtractor::Extract(Dyad dyad, std::span<double> out) {
  if (dyad.source == dyad.target) throw std::invalid_argument("self-dyad");
  if (out.size() != column_count()) throw std::invalid_argument("output width mismatch");
  for (std::size_t i = 0; i < states_.size(); ++i) {
    auto block = out.subspan(i * kReachFeatureCount, kReachFeatureCount);
    ExtractDirection(i, dyad.source, dyad.target, block.first(kDirectionFeatureCount));
    ExtractDirection(i, dyad.target, dyad.source, block.last(kDirectionFeatureCount));
  }
}

std::vector<double> ClockFeatureExtractor::Extract(Dyad dyad) {
  std::vector<double> out(column_count());
  Extract(dyad, out);
  return out;
}

FeatureTable ClockFeatureExtractor::Matrix(std::span<const Dyad> dyads) {
  FeatureTable table(ColumnNames());
  table.Reserve(dyads.size());
  std::vector<double> row(column_count());
  for (const Dyad& dyad : dyads) {
    Extract(dyad, row);
    table.AddRow(row);
  }
  return table;
}

}  // namespace vclp
