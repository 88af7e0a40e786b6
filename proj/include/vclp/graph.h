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

#ifndef VCLP_GRAPH_H_
#define VCLP_GRAPH_H_

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclp/event_stream.h"
#include "vclp/table.h"

namespace vclp {

inline constexpr std::uint32_t kDefaultMaxDepth = 5;
inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct WeightedEdge {
  NodeId node = 0;
  // Number of events aggregated into the edge.
  std::uint32_t weight = 0;
};

// Static directed multigraph aggregated from an event slice. Adjacency lists
// are sorted by neighbor index.
class AggregatedDigraph {
 public:
  AggregatedDigraph() = default;
  static AggregatedDigraph Aggregate(const EventSlice& slice);
  static AggregatedDigraph Aggregate(std::span<const Event> events, std::size_t node_count);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const WeightedEdge> Out(NodeId n) const { return out_[n]; }
  std::span<const WeightedEdge> In(NodeId n) const { return in_[n]; }
  // Nodes adjacent in either direction.
  std::span<const NodeId> Undirected(NodeId n) const { return undirected_[n]; }

  // Event count of s -> r, 0 without an edge.
  std::uint32_t Weight(NodeId s, NodeId r) const;
  bool HasEdge(NodeId s, NodeId r) const { return Weight(s, r) > 0; }
  // True when the node took part in at least one aggregated event.
  bool Active(NodeId n) const { return !undirected_[n].empty(); }

  std::size_t OutDegree(NodeId n) const { return out_[n].size(); }
  std::size_t InDegree(NodeId n) const { return in_[n].size(); }
  std::uint64_t OutStrength(NodeId n) const;
  std::uint64_t InStrength(NodeId n) const;

 private:
  std::vector<std::vector<WeightedEdge>> out_;
  std::vector<std::vector<WeightedEdge>> in_;
  std::vector<std::vector<NodeId>> undirected_;
  std::size_t edge_count_ = 0;
};

// Breadth-first directed hop counts from `source`, kUnreached beyond
// `max_depth`. The source itself is at 0.
std::vector<std::uint32_t> DirectedDistances(const AggregatedDigraph& graph,
                                             NodeId source, std::uint32_t max_depth);

std::optional<std::uint32_t> DirectedGeodesic(const AggregatedDigraph& graph,
                                              NodeId source, NodeId sink,
                                              std::uint32_t max_depth = kDefaultMaxDepth);

// Unit flow leaves `source` and moves outward one breadth-first layer at a
// time. Every node splits its flow over out-neighbors not in an earlier or
// its own layer, proportionally to edge weight; flow with nowhere to go is
// absorbed. Returns the flow that reached each node (source included).
std::vector<double> PropFlow(const AggregatedDigraph& graph, NodeId source,
                             std::uint32_t max_depth = kDefaultMaxDepth);

// Topological baseline block for a dyad (s, r):
//   bl_out_deg_src, bl_in_deg_src, bl_out_deg_dst, bl_in_deg_dst,
//   bl_out_strength_src, bl_in_strength_dst, bl_common_neighbors,
//   bl_adamic_adar, bl_jaccard, bl_pref_attach, bl_geodesic, bl_propflow
// Neighborhood measures use the undirected projection. The geodesic is
// directed and reads max_depth + 1 when farther or unreachable.
inline constexpr std::size_t kBaselineFeatureCount = 12;
std::vector<std::string> BaselineColumnNames();
std::array<double, kBaselineFeatureCount> BaselineFeatures(
    const AggregatedDigraph& graph, Dyad dyad, std::uint32_t max_depth = kDefaultMaxDepth);

// One row per dyad; per-source traversals are shared across dyads.
FeatureTable BaselineMatrix(const AggregatedDigraph& graph, std::span<const Dyad> dyads,
                            std::uint32_t max_depth = kDefaultMaxDepth);

}  // namespace vclp

#endif  // VCLP_GRAPH_H_
