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

#ifndef VCLP_EVENT_STREAM_H_
#define VCLP_EVENT_STREAM_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vclp {

// Epoch seconds.
using Time = std::int64_t;
// Dense node index in [0, |V|).
using NodeId = std::uint32_t;

struct Event {
  Time time = 0;
  NodeId sender = 0;
  NodeId receiver = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Bidirectional mapping between external string identifiers and dense
// indices. Indices are assigned in first-appearance order.
class NodeTable {
 public:
  NodeId Intern(std::string_view name);
  // Returns the index of `name`, or -1 when unknown.
  std::int64_t Find(std::string_view name) const;
  const std::string& Name(NodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

// A contiguous, time-ordered run of events that shares the node table of
// the stream it was cut from.
struct EventSlice {
  std::span<const Event> events;
  std::shared_ptr<const NodeTable> nodes;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
  std::size_t node_count() const { return nodes ? nodes->size() : 0; }
};

// Immutable, time-sorted event sequence. Equal timestamps keep input order.
class EventStream {
 public:
  EventStream() = default;
  // `events` need not be sorted; they are stably sorted by time. Every
  // index must be valid in `nodes` and no event may be a self-loop.
  EventStream(std::vector<Event> events, std::shared_ptr<const NodeTable> nodes);

  const std::vector<Event>& events() const { return events_; }
  const NodeTable& nodes() const { return *nodes_; }
  std::shared_ptr<const NodeTable> shared_nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_ ? nodes_->size() : 0; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  Time t_min() const { return t_min_; }
  Time t_max() const { return t_max_; }

  // Events with from <= time < to.
  EventSlice Slice(Time from, Time to) const;
  EventSlice All() const { return {events_, nodes_}; }

 private:
  std::vector<Event> events_;
  std::shared_ptr<const NodeTable> nodes_;
  Time t_min_ = 0;
  Time t_max_ = 0;
};

// Parses `time,sender,receiver` lines. A first line equal to
// `time,sender,receiver` is treated as a header; blank lines are skipped.
// Throws DataError naming the offending line.
EventStream ParseEvents(std::istream& in);
EventStream ReadEventFile(const std::string& path);

// Writes the canonical form: header line, then one line per event using
// external identifiers.
void WriteEvents(const EventStream& stream, std::ostream& out);
void WriteEvents(std::span<const Event> events, const NodeTable& nodes,
                 std::ostream& out);

}  // namespace vclp

#endif  // VCLP_EVENT_STREAM_H_
