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

#ifndef VCLP_EXPERIMENT_H_
#define VCLP_EXPERIMENT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "vclp/clock.h"
#include "vclp/event_stream.h"
#include "vclp/graph.h"
#include "vclp/sampling.h"
#include "vclp/table.h"

namespace vclp {

inline constexpr Time kSecondsPerDay = 86400;

// One train/test window tuple. Training features come from [t0, t1) and
// labels from [t1, t2); the test side is the same layout shifted by the
// label width.
struct Realization {
  std::size_t index = 0;
  Time t0 = 0;
  Time t1 = 0;
  Time t2 = 0;
  Time test_t0 = 0;
  Time test_t1 = 0;
  Time test_t2 = 0;

  friend bool operator==(const Realization&, const Realization&) = default;
};

// Realization k starts at t_min + k * shift; realizations are emitted while
// the test label window ends no later than t_max. Returns an empty plan when
// the span is too short. Throws std::invalid_argument for non-positive
// widths or shift.
std::vector<Realization> PlanRealizations(Time t_min, Time t_max, Time train_width,
                                          Time test_width, Time shift);

// Ordered pairs (s, r) of nodes active in `graph` whose directed geodesic
// distance is exactly `stratum` (>= 2, so there is no s -> r edge). With
// `exclude_reciprocal`, pairs with an r -> s edge are dropped. Sorted by
// (s, r).
std::vector<Dyad> EnumerateCandidates(const AggregatedDigraph& graph, std::uint32_t stratum,
                                      bool exclude_reciprocal);

// Candidates for several strata from one traversal per source; the result
// is parallel to `strata`.
std::vector<std::vector<Dyad>> EnumerateStrata(const AggregatedDigraph& graph,
                                               std::span<const std::uint32_t> strata,
                                               bool exclude_reciprocal);

// label[i] is 1 iff some event dyads[i].source -> dyads[i].target lies in
// `label_window`.
std::vector<std::uint8_t> LabelCandidates(std::span<const Dyad> dyads,
                                          std::span<const Event> label_window);

struct DatasetOptions {
  std::vector<Reach> reaches{Reach(1), Reach(2), Reach::Infinite()};
  std::vector<std::uint32_t> strata{2, 3, 4};
  bool exclude_reciprocal = false;
  std::uint32_t baseline_depth = kDefaultMaxDepth;
};

// Labeled candidates of one stratum in one window.
struct StratumData {
  std::uint32_t stratum = 0;
  std::vector<Dyad> dyads;
  std::vector<std::uint8_t> labels;
  FeatureTable clock_features;
  FeatureTable baseline_features;

  std::size_t positives() const;
  std::size_t negatives() const { return labels.size() - positives(); }
};

struct WindowData {
  Time observed_at = 0;
  // Parallel to DatasetOptions::strata.
  std::vector<StratumData> strata;
};

struct RealizationData {
  Realization realization;
  WindowData train;
  WindowData test;
};

// Builds the labeled per-stratum datasets of one realization. Clocks replay
// the stream from its first event and are read at t1 (train) and t1'
// (test); the aggregated window graph decides candidacy and strata.
RealizationData BuildStratifiedDatasets(const EventStream& stream,
                                        const Realization& realization,
                                        const DatasetOptions& options);

// Labeled candidates of one window given clocks already replayed to
// `observed_at`.
WindowData BuildWindow(const EventStream& stream, std::span<const ClockState> clocks,
                       Time window_start, Time observed_at, Time label_end,
                       const DatasetOptions& options);

}  // namespace vclp

#endif  // VCLP_EXPERIMENT_H_
