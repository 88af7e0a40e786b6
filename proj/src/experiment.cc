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

#include "vclp/experiment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "vclp/errors.h"
#include "vclp/features.h"
#include "vclp/random.h"

namespace vclp {

std::vector<std::size_t> Undersample(std::span<const std::uint8_t> labels, double ratio,
                                     std::uint64_t seed) {
  if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be positive");
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] != 0 ? positives : negatives).push_back(i);
  }
  if (positives.empty()) throw UntrainableError("no positive instances to resample");
  const auto negative_draws = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(positives.size())));
  if (negative_draws > 0 && negatives.empty()) {
    throw UntrainableError("no negative instances to resample");
  }

  Rng rng(seed);
  std::vector<std::size_t> rows;
  rows.reserve(positives.size() + negative_draws);
  for (std::size_t i = 0; i < positives.size(); ++i) {
    rows.push_back(positives[UniformIndex(rng, positives.size())]);
  }
  for (std::size_t i = 0; i < negative_draws; ++i) {
    rows.push_back(negatives[UniformIndex(rng, negatives.size())]);
  }
  return rows;
}

std::vector<Realization> PlanRealizations(Time t_min, Time t_max, Time train_width,
                                          Time test_width, Time shift) {
  if (train_width <= 0 || test_width <= 0 || shift <= 0) {
    throw std::invalid_argument("window widths and shift must be positive");
  }
  std::vector<Realization> plan;
  for (std::size_t k = 0;; ++k) {
    Realization r;
    r.index = k;
    r.t0 = t_min + static_cast<Time>(k) * shift;
    r.t1 = r.t0 + train_width;
    r.t2 = r.t1 + test_width;
    r.test_t0 = r.t0 + test_width;
    r.test_t1 = r.t1 + test_width;
    r.test_t2 = r.t2 + test_width;
    if (r.test_t2 > t_max) break;
    plan.push_back(r);
  }
  return plan;
}

std::vector<std::vector<Dyad>> EnumerateStrata(const AggregatedDigraph& graph,
                                               std::span<const std::uint32_t> strata,
                                               bool exclude_reciprocal) {
  std::uint32_t depth = 0;
  for (auto n : strata) {
    if (n < 2) throw std::invalid_argument("strata start at distance 2");
    depth = std::max(depth, n);
  }
  std::vector<std::vector<Dyad>> out(strata.size());
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (!graph.Active(s)) continue;
    const auto dist = DirectedDistances(graph, s, depth);
    for (NodeId r = 0; r < graph.node_count(); ++r) {
      if (r == s || dist[r] == kUnreached || !graph.Active(r)) continue;
      if (exclude_reciprocal && graph.HasEdge(r, s)) continue;
      for (std::size_t k = 0; k < strata.size(); ++k) {
        if (dist[r] == strata[k]) out[k].push_back({s, r});
      }
    }
  }
  return out;
}

std::vector<Dyad> EnumerateCandidates(const AggregatedDigraph& graph, std::uint32_t stratum,
                                      bool exclude_reciprocal) {
  const std::uint32_t strata[] = {stratum};
  return std::move(EnumerateStrata(graph, strata, exclude_reciprocal).front());
}

std::vector<std::uint8_t> LabelCandidates(std::span<const Dyad> dyads,
                                          std::span<const Event> label_window) {
  std::unordered_set<std::uint64_t> formed;
  formed.reserve(label_window.size());
  for (const Event& e : label_window) {
    formed.insert((static_cast<std::uint64_t>(e.sender) << 32) | e.receiver);
  }
  std::vector<std::uint8_t> labels;
  labels.reserve(dyads.size());
  for (const Dyad& d : dyads) {
    labels.push_back(
        formed.count((static_cast<std::uint64_t>(d.source) << 32) | d.target) ? 1 : 0);
  }
  return labels;
}

std::size_t StratumData::positives() const {
  std::size_t n = 0;
  for (auto l : labels) n += l != 0;
  return n;
}

WindowData BuildWindow(const EventStream& stream, std::span<const ClockState> clocks,
                       Time window_start, Time observed_at, Time label_end,
                       const DatasetOptions& options) {
  WindowData window;
  window.observed_at = observed_at;
  const auto graph = AggregatedDigraph::Aggregate(stream.Slice(window_start, observed_at));
  const auto label_events = stream.Slice(observed_at, label_end).events;
  auto candidates = EnumerateStrata(graph, options.strata, options.exclude_reciprocal);

  std::vector<const ClockState*> states;
  for (const auto& c : clocks) states.push_back(&c);
  ClockFeatureExtractor extractor(states, observed_at, stream.t_min());

  for (std::size_t k = 0; k < options.strata.size(); ++k) {
    StratumData data;
    data.stratum = options.strata[k];
    data.dyads = std::move(candidates[k]);
    data.labels = LabelCandidates(data.dyads, label_events);
    data.clock_features = extractor.Matrix(data.dyads);
    data.baseline_features = BaselineMatrix(graph, data.dyads, options.baseline_depth);
    window.strata.push_back(std::move(data));
  }
  return window;
}

RealizationData BuildStratifiedDatasets(const EventStream& stream,
                                        const Realization& realization,
                                        const DatasetOptions& options) {
  std::vector<ClockState> clocks;
  for (Reach reach : options.reaches) clocks.emplace_back(reach, stream.node_count());
  const auto events = std::span<const Event>(stream.events());

  RealizationData out;
  out.realization = realization;
  std::size_t cursor = 0;
  for (auto& clock : clocks) cursor = clock.ReplayUntil(events, 0, realization.t1);
  out.train = BuildWindow(stream, clocks, realization.t0, realization.t1, realization.t2,
                          options);
  const std::size_t resume = cursor;
  for (auto& clock : clocks) cursor = clock.ReplayUntil(events, resume, realization.test_t1);
  out.test = BuildWindow(stream, clocks, realization.test_t0, realization.test_t1,
                         realization.test_t2, options);
  return out;
}

}  // namespace vclp
