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

#include "vclp/event_stream.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vclp/errors.h"

namespace vclp {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void Fail(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

NodeId NodeTable::Intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::int64_t NodeTable::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

EventStream::EventStream(std::vector<Event> events,
                         std::shared_ptr<const NodeTable> nodes)
    : events_(std::move(events)), nodes_(std::move(nodes)) {
  if (!nodes_) nodes_ = std::make_shared<NodeTable>();
  for (const Event& e : events_) {
    if (e.sender == e.receiver) throw DataError("self-loop event");
    if (e.sender >= nodes_->size() || e.receiver >= nodes_->size()) {
      throw DataError("event references unknown node index");
    }
  }
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  if (!events_.empty()) {
    t_min_ = events_.front().time;
    t_max_ = events_.back().time;
  }
}

EventSlice EventStream::Slice(Time from, Time to) const {
  if (to < from) to = from;
  auto by_time = [](const Event& e, Time t) { return e.time < t; };
  auto lo = std::lower_bound(events_.begin(), events_.end(), from, by_time);
  auto hi = std::lower_bound(lo, events_.end(), to, by_time);
  return {std::span<const Event>(lo, hi), nodes_};
}

EventStream ParseEvents(std::istream& in) {
  auto nodes = std::make_shared<NodeTable>();
  std::vector<Event> events;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (text == "time,sender,receiver") continue;
    }
    const auto c1 = text.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
    if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
      Fail(line_no, "expected 3 comma-separated fields");
    }
    const std::string_view ts = Trim(text.substr(0, c1));
    const std::string_view snd = Trim(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view rcv = Trim(text.substr(c2 + 1));
    Time time = 0;
    const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), time);
    if (ts.empty() || ec != std::errc() || ptr != ts.data() + ts.size()) {
      Fail(line_no, "malformed timestamp '" + std::string(ts) + "'");
    }
    if (time < 0) Fail(line_no, "negative timestamp");
    if (snd.empty() || rcv.empty()) Fail(line_no, "empty node identifier");
    if (snd == rcv) Fail(line_no, "self-loop '" + std::string(snd) + "'");
    const NodeId s = nodes->Intern(snd);
    const NodeId r = nodes->Intern(rcv);
    events.push_back({time, s, r});
  }
  if (events.empty()) throw DataError("event input contains no events");
  return EventStream(std::move(events), std::move(nodes));
}

EventStream ReadEventFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open event file '" + path + "'");
  return ParseEvents(in);
}

void WriteEvents(std::span<const Event> events, const NodeTable& nodes,
                 std::ostream& out) {
  out << "time,sender,receiver\n";
  for (const Event& e : events) {
    out << e.time << ',' << nodes.Name(e.sender) << ',' << nodes.Name(e.receiver)
        << '\n';
  }
}

void WriteEvents(const EventStream& stream, std::ostream& out) {
  WriteEvents(stream.events(), stream.nodes(), out);
}

}  // namespace vclp
