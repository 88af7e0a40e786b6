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

#include "vclp/clock.h"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace vclp {
namespace {

const ViewMap kNoViews;

std::uint32_t NextHop(std::uint32_t dist) {
  return dist == Reach::kInfiniteHops ? dist : dist + 1;
}

}  // namespace

Reach::Reach(std::uint32_t hops) : hops_(hops) {
  if (hops == 0) throw std::invalid_argument("reach must be at least 1");
}

Reach Reach::Parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return Infinite();
  std::uint32_t hops = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), hops);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid reach '" + std::string(text) + "'");
  }
  return Reach(hops);
}

std::string Reach::ToString() const {
  return is_infinite() ? "inf" : std::to_string(hops_);
}

ClockState::ClockState(Reach reach, std::size_t node_count_hint)
    : reach_(reach), views_(node_count_hint) {}

void ClockState::EnsureNode(NodeId id) {
  if (id >= views_.size()) views_.resize(static_cast<std::size_t>(id) + 1);
}

void ClockState::RequireQuiesced() const {
  if (!pending_.empty()) {
    throw std::logic_error("clock has a buffered batch; call Flush() before querying");
  }
}

UpdateSummary ClockState::ProcessEvent(const Event& event) {
  if (event.time < now_) {
    throw std::invalid_argument("out-of-order event at time " +
                                std::to_string(event.time) + " (clock at " +
                                std::to_string(now_) + ")");
  }
  if (event.sender == event.receiver) {
    throw std::invalid_argument("self-loop event");
  }
  UpdateSummary summary;
  if (!pending_.empty() && pending_.front().time != event.time) summary = Flush();
  pending_.push_back(event);
  now_ = event.time;
  return summary;
}

UpdateSummary ClockState::Flush() {
  if (pending_.empty()) return {};
  UpdateSummary summary = Commit(pending_);
  pending_.clear();
  return summary;
}

UpdateSummary ClockState::Replay(std::span<const Event> events) {
  UpdateSummary summary;
  for (const Event& e : events) summary += ProcessEvent(e);
  summary += Flush();
  return summary;
}

std::size_t ClockState::ReplayUntil(std::span<const Event> events,
                                    std::size_t cursor, Time until) {
  while (cursor < events.size() && events[cursor].time < until) {
    ProcessEvent(events[cursor]);
    ++cursor;
  }
  Flush();
  return cursor;
}

UpdateSummary ClockState::Commit(std::span<const Event> batch) {
  UpdateSummary summary;
  const Time at = batch.front().time;
  for (const Event& e : batch) {
    EnsureNode(e.sender);
    EnsureNode(e.receiver);
  }

  if (batch.size() == 1) {
    // A lone event never reads a view it writes (sender != receiver).
    const Event& e = batch.front();
    const ViewMap& known = views_[e.sender];
    ViewMap& views = views_[e.receiver];
    Apply(views, e.sender, {e.receiver, e.sender, at, 1, 1}, at, summary);
    for (const auto& [target, view] : known) {
      if (target == e.receiver) continue;
      Apply(views, target, {e.receiver, target, view.timestamp, NextHop(view.dist), 0},
            at, summary);
    }
    return summary;
  }

  // Gather every proposal against the pre-batch state, then merge per
  // (receiver, target) so the commit is order independent.
  scratch_.clear();
  for (const Event& e : batch) {
    scratch_.push_back({e.receiver, e.sender, at, 1, 1});
    for (const auto& [target, view] : views_[e.sender]) {
      if (target == e.receiver) continue;
      scratch_.push_back({e.receiver, target, view.timestamp, NextHop(view.dist), 0});
    }
  }
  std::sort(scratch_.begin(), scratch_.end(), [](const Proposal& a, const Proposal& b) {
    return a.receiver != b.receiver ? a.receiver < b.receiver : a.target < b.target;
  });
  for (std::size_t i = 0; i < scratch_.size();) {
    Proposal merged = scratch_[i];
    std::size_t j = i + 1;
    for (; j < scratch_.size() && scratch_[j].receiver == merged.receiver &&
           scratch_[j].target == merged.target;
         ++j) {
      merged.timestamp = std::max(merged.timestamp, scratch_[j].timestamp);
      merged.dist = std::min(merged.dist, scratch_[j].dist);
      merged.direct += scratch_[j].direct;
    }
    Apply(views_[merged.receiver], merged.target, merged, at, summary);
    i = j;
  }
  return summary;
}

void ClockState::Apply(ViewMap& views, NodeId target, const Proposal& merged,
                       Time at, UpdateSummary& summary) {
  const bool direct = merged.direct > 0;
  const Time offered = direct ? at : merged.timestamp;
  const std::uint32_t offered_dist = direct ? 1 : merged.dist;

  auto it = views.find(target);
  if (it == views.end()) {
    if (!direct && !reach_.Allows(offered_dist)) return;
    TemporalView view;
    view.timestamp = offered;
    view.dist = offered_dist;
    view.direct_count = merged.direct;
    view.indirect_count = direct ? 0 : 1;
    view.last_update_time = at;
    view.last_update_latency = at - offered;
    views.emplace(target, view);
    ++view_count_;
    ++summary.created;
    return;
  }

  TemporalView& view = it->second;
  if (offered > view.timestamp) {
    const Time span = at - view.last_update_time;
    view.twice_latency_area += 2 * span * view.last_update_latency + span * span;
    view.accumulated_duration += span;
    view.last_update_time = at;
    view.last_update_latency = at - offered;
    view.timestamp = offered;
    if (!direct) ++view.indirect_count;
    ++summary.advanced;
  }
  view.dist = std::min(view.dist, offered_dist);
  view.direct_count += merged.direct;
}

const TemporalView* ClockState::View(NodeId observer, NodeId target) const {
  if (observer == target) {
    throw std::invalid_argument("the self view is implicit and cannot be queried");
  }
  RequireQuiesced();
  if (observer >= views_.size()) return nullptr;
  const auto& views = views_[observer];
  auto it = views.find(target);
  return it == views.end() ? nullptr : &it->second;
}

std::optional<Time> ClockState::CurrentLatency(NodeId observer, NodeId target,
                                               Time at) const {
  if (at < now_) throw std::invalid_argument("latency queried before clock time");
  const TemporalView* view = View(observer, target);
  if (view == nullptr) return std::nullopt;
  return at - view->timestamp;
}

std::optional<std::uint32_t> ClockState::Distance(NodeId source, NodeId sink) const {
  const TemporalView* view = View(sink, source);
  if (view == nullptr) return std::nullopt;
  return view->dist;
}

const ViewMap& ClockState::ViewsOf(NodeId observer) const {
  RequireQuiesced();
  return observer < views_.size() ? views_[observer] : kNoViews;
}

void ClockState::Dump(std::ostream& out, const NodeTable* nodes) const {
  RequireQuiesced();
  std::vector<std::pair<NodeId, const TemporalView*>> row;
  for (NodeId observer = 0; observer < views_.size(); ++observer) {
    row.clear();
    for (const auto& [target, view] : views_[observer]) row.emplace_back(target, &view);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [target, view] : row) {
      if (nodes != nullptr) {
        out << nodes->Name(observer) << ',' << nodes->Name(target);
      } else {
        out << observer << ',' << target;
      }
      out << ',' << view->timestamp << ',' << view->dist << ',' << view->direct_count
          << ',' << view->indirect_count << '\n';
    }
  }
}

}  // namespace vclp
