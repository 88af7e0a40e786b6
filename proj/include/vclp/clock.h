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

#ifndef VCLP_CLOCK_H_
#define VCLP_CLOCK_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vclp/event_stream.h"

namespace vclp {

// Maximum hop count at which a temporal view may be created. Existing views
// keep updating through chains of any length.
class Reach {
 public:
  static constexpr std::uint32_t kInfiniteHops =
      std::numeric_limits<std::uint32_t>::max();

  // Throws std::invalid_argument for hops == 0.
  explicit Reach(std::uint32_t hops);
  static Reach Infinite() { return Reach(kInfiniteHops); }
  // Accepts a positive integer or "inf".
  static Reach Parse(std::string_view text);

  std::uint32_t hops() const { return hops_; }
  bool is_infinite() const { return hops_ == kInfiniteHops; }
  bool Allows(std::uint32_t dist) const { return dist <= hops_; }
  // "1", "2", ..., "inf".
  std::string ToString() const;

  friend bool operator==(Reach, Reach) = default;
  friend auto operator<=>(Reach, Reach) = default;

 private:
  std::uint32_t hops_;
};

// What an observer knows about one target.
struct TemporalView {
  // Latest time of information from the target that could have reached the
  // observer.
  Time timestamp = 0;
  // Fewest hops over all time-respecting paths seen so far.
  std::uint32_t dist = 0;
  std::uint32_t direct_count = 0;
  // Timestamp-advancing updates relayed through an intermediary.
  std::uint32_t indirect_count = 0;

  // Latency accumulators. The latency t - timestamp is a ramp that drops at
  // every timestamp change; the closed part of its integral is kept doubled
  // so that it stays exact in integer arithmetic.
  Time last_update_time = 0;
  Time last_update_latency = 0;
  std::int64_t twice_latency_area = 0;
  Time accumulated_duration = 0;

  friend bool operator==(const TemporalView&, const TemporalView&) = default;
};

struct UpdateSummary {
  std::size_t created = 0;
  std::size_t advanced = 0;

  UpdateSummary& operator+=(const UpdateSummary& o) {
    created += o.created;
    advanced += o.advanced;
    return *this;
  }
};

using ViewMap = std::unordered_map<NodeId, TemporalView>;

// Reach-bounded social vector clocks over a directed event stream.
//
// All events sharing a timestamp form one batch: indirect information is
// read from the state as of strictly before that timestamp, then every
// update of the batch is committed at once. The committed state therefore
// does not depend on the order of simultaneous events.
//
// Single writer. Queries must not race with processing and require a
// quiesced state (no buffered batch, see Flush()).
class ClockState {
 public:
  static constexpr Time kNever = std::numeric_limits<Time>::min();

  explicit ClockState(Reach reach, std::size_t node_count_hint = 0);

  Reach reach() const { return reach_; }
  // Time of the last accepted event, or kNever.
  Time now() const { return now_; }
  std::size_t node_count() const { return views_.size(); }
  std::size_t view_count() const { return view_count_; }
  bool quiesced() const { return pending_.empty(); }

  // Buffers `event` in the current same-time batch. When the event is later
  // than the buffered batch, that batch is committed first and its summary
  // returned. Throws std::invalid_argument for out-of-order events.
  UpdateSummary ProcessEvent(const Event& event);
  // Commits any buffered batch.
  UpdateSummary Flush();
  // Processes `events` (time-sorted) and flushes.
  UpdateSummary Replay(std::span<const Event> events);
  // Processes events[cursor...] with time < until and returns the new
  // cursor. The state is quiesced afterwards.
  std::size_t ReplayUntil(std::span<const Event> events, std::size_t cursor,
                          Time until);

  // Stored view of `observer` on `target`, or nullptr. Throws
  // std::invalid_argument when observer == target.
  const TemporalView* View(NodeId observer, NodeId target) const;
  // at - timestamp, or nullopt without a view.
  std::optional<Time> CurrentLatency(NodeId observer, NodeId target, Time at) const;
  // Shortest time-respecting path length from `source` to `sink`, i.e. the
  // dist of the view on `source` held by `sink`.
  std::optional<std::uint32_t> Distance(NodeId source, NodeId sink) const;

  // All views held by `observer` (empty for unknown nodes).
  const ViewMap& ViewsOf(NodeId observer) const;

  // One line per view, `observer,target,timestamp,dist,direct_count,
  // indirect_count`, ordered by observer then target index. Names are used
  // for node columns when `nodes` is given.
  void Dump(std::ostream& out, const NodeTable* nodes = nullptr) const;

 private:
  struct Proposal {
    NodeId receiver;
    NodeId target;
    Time timestamp;
    std::uint32_t dist;
    std::uint32_t direct;
  };

  void EnsureNode(NodeId id);
  void RequireQuiesced() const;
  UpdateSummary Commit(std::span<const Event> batch);
  void Apply(ViewMap& views, NodeId target, const Proposal& merged, Time at,
             UpdateSummary& summary);

  Reach reach_;
  Time now_ = kNever;
  std::vector<ViewMap> views_;
  std::size_t view_count_ = 0;
  std::vector<Event> pending_;
  std::vector<Proposal> scratch_;
};

}  // namespace vclp

#endif  // VCLP_CLOCK_H_
