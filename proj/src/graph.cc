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

#include "vclp/graph.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace vclp {
namespace {

std::vector<std::vector<WeightedEdge>> GroupRuns(std::vector<std::pair<NodeId, NodeId>>& pairs,
                                                 std::size_t node_count) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::vector<WeightedEdge>> lists(node_count);
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
    lists[pairs[i].first].push_back({pairs[i].second, static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return lists;
}

std::array<double, kBaselineFeatureCount> BaselineFromTraversals(
    const AggregatedDigraph& graph, Dyad dyad, std::uint32_t max_depth,
    std::span<const std::uint32_t> distances, std::span<const double> flow) {
  const NodeId s = dyad.source;
  const NodeId r = dyad.target;
  const auto ns = graph.Undirected(s);
  const auto nr = graph.Undirected(r);

  std::size_t common = 0;
  double adamic_adar = 0.0;
  {
    auto ia = ns.begin();
    auto ib = nr.begin();
    while (ia != ns.end() && ib != nr.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++common;
        const auto degree = graph.Undirected(*ia).size();
        if (degree > 1) adamic_adar += 1.0 / std::log(static_cast<double>(degree));
        ++ia;
        ++ib;
      }
    }
  }
  const std::size_t union_size = ns.size() + nr.size() - common;
  const double jaccard =
      union_size == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(union_size);
  const std::uint32_t geodesic =
      distances[r] == kUnreached ? max_depth + 1 : distances[r];

  return {static_cast<double>(graph.OutDegree(s)),
          static_cast<double>(graph.InDegree(s)),
          static_cast<double>(graph.OutDegree(r)),
          static_cast<double>(graph.InDegree(r)),
          static_cast<double>(graph.OutStrength(s)),
          static_cast<double>(graph.InStrength(r)),
          static_cast<double>(common),
          adamic_adar,
          jaccard,
          static_cast<double>(graph.OutDegree(s) * graph.InDegree(r)),
          static_cast<double>(geodesic),
          flow[r]};
}

}  // namespace

AggregatedDigraph AggregatedDigraph::Aggregate(const EventSlice& slice) {
  return Aggregate(slice.events, slice.node_count());
}

AggregatedDigraph AggregatedDigraph::Aggregate(std::span<const Event> events,
                                               std::size_t node_count) {
  std::vector<std::pair<NodeId, NodeId>> forward;
  std::vector<std::pair<NodeId, NodeId>> backward;
  forward.reserve(events.size());
  backward.reserve(events.size());
  for (const Event& e : events) {
    if (e.sender == e.receiver) throw std::invalid_argument("self-loop in slice");
    node_count = std::max<std::size_t>(node_count, std::max(e.sender, e.receiver) + 1);
    forward.emplace_back(e.sender, e.receiver);
    backward.emplace_back(e.receiver, e.sender);
  }
  AggregatedDigraph g;
  g.out_ = GroupRuns(forward, node_count);
  g.in_ = GroupRuns(backward, node_count);
  g.undirected_.resize(node_count);
  for (NodeId n = 0; n < node_count; ++n) {
    auto& merged = g.undirected_[n];
    for (const auto& e : g.out_[n]) merged.push_back(e.node);
    for (const auto& e : g.in_[n]) merged.push_back(e.node);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    g.edge_count_ += g.out_[n].size();
  }
  return g;
}

std::uint32_t AggregatedDigraph::Weight(NodeId s, NodeId r) const {
  if (s >= out_.size()) return 0;
  const auto& edges = out_[s];
  auto it = std::lower_bound(edges.begin(), edges.end(), r,
                             [](const WeightedEdge& e, NodeId n) { return e.node < n; });
  return it != edges.end() && it->node == r ? it->weight : 0;
}

std::uint64_t AggregatedDigraph::OutStrength(NodeId n) const {
  std::uint64_t total = 0;
  for (const auto& e : out_[n]) total += e.weight;
  return total;
}

std::uint64_t AggregatedDigraph::InStrength(NodeId n) const {
  std::uint64_t total = 0;
  for (const auto& e : in_[n]) total += e.weight;
  return total;
}

std::vector<std::uint32_t> DirectedDistances(const AggregatedDigraph& graph, NodeId source,
                                             std::uint32_t max_depth) {
  std::vector<std::uint32_t> dist(graph.node_count(), kUnreached);
  if (source >= graph.node_count()) return dist;
  dist[source] = 0;
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    if (dist[n] >= max_depth) continue;
    for (const auto& e : graph.Out(n)) {
      if (dist[e.node] == kUnreached) {
        dist[e.node] = dist[n] + 1;
        queue.push_back(e.node);
      }
    }
  }
  return dist;
}

std::optional<std::uint32_t> DirectedGeodesic(const AggregatedDigraph& graph, NodeId source,
                                              NodeId sink, std::uint32_t max_depth) {
  if (source == sink) throw std::invalid_argument("geodesic of a self-dyad");
  if (sink >= graph.node_count()) return std::nullopt;
  const auto dist = DirectedDistances(graph, source, max_depth);
  if (dist[sink] == kUnreached) return std::nullopt;
  return dist[sink];
}

std::vector<double> PropFlow(const AggregatedDigraph& graph, NodeId source,
                             std::uint32_t max_depth) {
  if (max_depth < 1) throw std::invalid_argument("propflow depth must be at least 1");
  std::vector<double> flow(graph.node_count(), 0.0);
  if (source >= graph.node_count()) return flow;
  std::vector<std::uint32_t> layer(graph.node_count(), kUnreached);
  layer[source] = 0;
  flow[source] = 1.0;
  std::vector<NodeId> frontier{source};
  for (std::uint32_t depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    // Discover the next layer first so that siblings all feed it.
    std::vector<NodeId> next;
    for (NodeId n : frontier) {
      for (const auto& e : graph.Out(n)) {
        if (layer[e.node] == kUnreached) {
          layer[e.node] = depth + 1;
          next.push_back(e.node);
        }
      }
    }
    for (NodeId n : frontier) {
      std::uint64_t outgoing = 0;
      for (const auto& e : graph.Out(n)) {
        if (layer[e.node] == depth + 1) outgoing += e.weight;
      }
      if (outgoing == 0) continue;
      for (const auto& e : graph.Out(n)) {
        if (layer[e.node] == depth + 1) {
          flow[e.node] += flow[n] * static_cast<double>(e.weight) /
                          static_cast<double>(outgoing);
        }
      }
    }
    frontier = std::move(next);
  }
  return flow;
}

std::vector<std::string> BaselineColumnNames() {
  return {"bl_out_deg_src",      "bl_in_deg_src",       "bl_out_deg_dst",
          "bl_in_deg_dst",       "bl_out_strength_src", "bl_in_strength_dst",
          "bl_common_neighbors", "bl_adamic_adar",      "bl_jaccard",
          "bl_pref_attach",      "bl_geodesic",         "bl_propflow"};
}

std::array<double, kBaselineFeatureCount> BaselineFeatures(const AggregatedDigraph& graph,
                                                           Dyad dyad,
                                                           std::uint32_t max_depth) {
  if (dyad.source == dyad.target) throw std::invalid_argument("self-dyad");
  const auto distances = DirectedDistances(graph, dyad.source, max_depth);
  const auto flow = PropFlow(graph, dyad.source, max_depth);
  return BaselineFromTraversals(graph, dyad, max_depth, distances, flow);
}

FeatureTable BaselineMatrix(const AggregatedDigraph& graph, std::span<const Dyad> dyads,
                            std::uint32_t max_depth) {
  FeatureTable table(BaselineColumnNames());
  table.Reserve(dyads.size());
  NodeId cached_source = 0;
  bool have_cache = false;
  std::vector<std::uint32_t> distances;
  std::vector<double> flow;
  for (const Dyad& dyad : dyads) {
    if (dyad.source == dyad.target) throw std::invalid_argument("self-dyad");
    if (!have_cache || dyad.source != cached_source) {
      distances = DirectedDistances(graph, dyad.source, max_depth);
      flow = PropFlow(graph, dyad.source, max_depth);
      cached_source = dyad.source;
      have_cache = true;
    }
    const auto row = BaselineFromTraversals(graph, dyad, max_depth, distances, flow);
    table.AddRow(row);
  }
  return table;
}

}  // namespace vclp
