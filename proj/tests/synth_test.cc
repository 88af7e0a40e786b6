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

#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "vclp/synth.h"

namespace vclp {
namespace {

std::string Serialize(const EventStream& stream) {
  std::ostringstream out;
  WriteEvents(stream, out);
  return out.str();
}

SynthParams SmallParams() {
  SynthParams p;
  p.nodes = 60;
  p.days = 20;
  return p;
}

TEST_CASE("fixed seed reproduces the stream") {
  const auto a = Serialize(Synthesize(SmallParams()));
  CHECK(a == Serialize(Synthesize(SmallParams())));
  auto other = SmallParams();
  other.seed = 2;
  CHECK(a != Serialize(Synthesize(other)));
}

TEST_CASE("stream shape") {
  const auto p = SmallParams();
  const auto stream = Synthesize(p);
  CHECK(stream.t_min() >= p.start);
  CHECK(stream.t_max() < p.start + static_cast<Time>(p.days * 86400));
  CHECK(stream.node_count() <= p.nodes);
  // Roughly base_rate * nodes * days spontaneous messages plus responses.
  CHECK(stream.size() > 400);
  CHECK(stream.size() < 2000);
  CHECK(stream.nodes().Name(stream.events().front().sender).rfind("u", 0) == 0);
}

TEST_CASE("full reciprocity answers every message once") {
  auto p = SmallParams();
  p.reciprocity_prob = 1.0;
  p.cascade_prob = 0.0;
  p.closure_prob = 0.0;
  const auto messages = SimulateMessages(p);
  const Time horizon = p.start + static_cast<Time>(p.days * 86400);
  std::size_t originals = 0, replies = 0, settled = 0;
  // Pending originals per (sender, receiver), in time order.
  std::map<std::pair<NodeId, NodeId>, std::vector<Time>> pending;
  for (const auto& m : messages) {
    CHECK((m.kind == MessageKind::kSpontaneous || m.kind == MessageKind::kReply));
    if (m.kind == MessageKind::kSpontaneous) {
      ++originals;
      if (m.event.time + kMaxReplyDelay < horizon) ++settled;
      pending[{m.event.sender, m.event.receiver}].push_back(m.event.time);
      continue;
    }
    ++replies;
    auto& times = pending[{m.event.receiver, m.event.sender}];
    const auto it = std::find_if(times.begin(), times.end(), [&](Time t) {
      return m.event.time - t >= kMinReplyDelay && m.event.time - t <= kMaxReplyDelay;
    });
    REQUIRE(it != times.end());
    times.erase(it);
  }
  CHECK(replies <= originals);
  CHECK(replies >= settled);
}

TEST_CASE("mechanisms switched off leave only spontaneous messages") {
  auto p = SmallParams();
  p.reciprocity_prob = p.cascade_prob = p.closure_prob = 0.0;
  for (const auto& m : SimulateMessages(p)) CHECK(m.kind == MessageKind::kSpontaneous);
}

TEST_CASE("closure messages reach contacts of contacts") {
  auto p = SmallParams();
  p.closure_prob = 1.0;
  std::size_t closures = 0;
  for (const auto& m : SimulateMessages(p)) closures += m.kind == MessageKind::kClosure;
  CHECK(closures > 0);
}

TEST_CASE("parameter validation") {
  SynthParams p;
  p.nodes = 0;
  CHECK_THROWS_AS(p.Validate(), std::invalid_argument);
  p = {};
  p.closure_prob = 1.5;
  CHECK_THROWS_AS(p.Validate(), std::invalid_argument);
  p = {};
  p.days = 0;
  CHECK_THROWS_AS(Synthesize(p), std::invalid_argument);
}

}  // namespace
}  // namespace vclp
