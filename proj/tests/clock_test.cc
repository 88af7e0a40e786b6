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
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "vclp/clock.h"

namespace vclp {
namespace {

constexpr NodeId A = 0, B = 1, C = 2, D = 3;

const std::vector<Event> kS1 = {{1, A, B}, {2, B, C}, {3, C, A}};

ClockState Run(Reach reach, const std::vector<Event>& events) {
  ClockState state(reach);
  state.Replay(events);
  return state;
}

std::string DumpOf(const ClockState& state) {
  std::ostringstream out;
  state.Dump(out);
  return out.str();
}

TEST_CASE("reach parsing") {
  CHECK(Reach::Parse("1").hops() == 1);
  CHECK(Reach::Parse("inf").is_infinite());
  CHECK(Reach::Parse("inf").ToString() == "inf");
  CHECK(Reach(2).ToString() == "2");
  CHECK_THROWS_AS(Reach(0), std::invalid_argument);
  CHECK_THROWS_AS(Reach::Parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(Reach::Parse("two"), std::invalid_argument);
  CHECK_THROWS_AS(Reach::Parse("-1"), std::invalid_argument);
  CHECK(Reach(1) < Reach(2));
  CHECK(Reach(2) < Reach::Infinite());
}

TEST_CASE("three-event chain at unbounded reach") {
  const auto state = Run(Reach::Infinite(), kS1);
  REQUIRE(state.View(C, B) != nullptr);
  CHECK(state.View(C, B)->timestamp == 2);
  CHECK(state.View(C, B)->dist == 1);
  REQUIRE(state.View(C, A) != nullptr);
  CHECK(state.View(C, A)->timestamp == 1);
  CHECK(state.View(C, A)->dist == 2);
  CHECK(state.View(A, C)->timestamp == 3);
  CHECK(state.View(A, C)->dist == 1);
  CHECK(state.View(A, B)->timestamp == 2);
  CHECK(state.View(A, B)->dist == 2);
  CHECK(state.ViewsOf(C).size() == 2);
  CHECK(state.ViewsOf(A).size() == 2);
  CHECK(state.ViewsOf(B).size() == 1);
  CHECK(state.view_count() == 5);

  CHECK(state.CurrentLatency(A, B, 10) == 8);
  CHECK(state.Distance(A, C) == 2);
  CHECK(state.Distance(C, A) == 1);
  CHECK(state.Distance(B, A) == 2);
  CHECK(state.Distance(A, B) == 1);
}

TEST_CASE("reach one creates views only from direct events") {
  const auto state = Run(Reach(1), kS1);
  CHECK(state.ViewsOf(C).size() == 1);
  CHECK(state.View(C, B)->timestamp == 2);
  CHECK(state.View(C, A) == nullptr);
  CHECK(state.ViewsOf(A).size() == 1);
  CHECK(state.View(A, C)->timestamp == 3);
  CHECK_FALSE(state.CurrentLatency(C, A, 10).has_value());
}

TEST_CASE("existing views keep updating beyond reach") {
  // B learns of A directly, then hears fresher news of A through C.
  const std::vector<Event> events = {{1, A, B}, {2, A, C}, {3, C, D}, {4, D, B}};
  const auto state = Run(Reach(1), events);
  CHECK(state.View(B, A)->timestamp == 1);
  CHECK(state.View(D, A) == nullptr);

  const std::vector<Event> relayed = {{1, A, B}, {2, A, C}, {3, C, B}};
  const auto s2 = Run(Reach(1), relayed);
  CHECK(s2.View(B, A)->timestamp == 2);
  CHECK(s2.View(B, A)->direct_count == 1);
  CHECK(s2.View(B, A)->indirect_count == 1);
}

TEST_CASE("queries are rejected while a batch is buffered") {
  ClockState state(Reach::Infinite());
  state.ProcessEvent({1, A, B});
  CHECK_FALSE(state.quiesced());
  CHECK_THROWS_AS(state.View(B, A), std::logic_error);
  state.ProcessEvent({2, B, C});
  CHECK_FALSE(state.quiesced());
  state.Flush();
  CHECK(state.quiesced());
  CHECK(state.View(C, A)->timestamp == 1);
  CHECK_THROWS_AS(state.ProcessEvent({1, A, C}), std::invalid_argument);
  CHECK_THROWS_AS(state.ProcessEvent({5, A, A}), std::invalid_argument);
  CHECK_THROWS_AS(state.View(A, A), std::invalid_argument);
  CHECK_THROWS_AS(state.CurrentLatency(C, A, 1), std::invalid_argument);
}

TEST_CASE("equal timestamps do not chain") {
  const auto state = Run(Reach::Infinite(), {{5, A, B}, {5, B, C}});
  CHECK(state.View(C, A) == nullptr);
  CHECK(state.View(C, B)->timestamp == 5);
  const auto swapped = Run(Reach::Infinite(), {{5, B, C}, {5, A, B}});
  CHECK(DumpOf(state) == DumpOf(swapped));
}

TEST_CASE("mutual contact at one instant") {
  const auto state = Run(Reach::Infinite(), {{1, C, A}, {4, A, B}, {4, B, A}});
  CHECK(state.View(A, B)->timestamp == 4);
  CHECK(state.View(B, A)->timestamp == 4);
  CHECK(state.View(B, C)->timestamp == 1);
  CHECK(state.View(B, C)->dist == 2);
  CHECK(state.View(A, C)->direct_count == 1);
}

TEST_CASE("counts distinguish direct and relayed updates") {
  const std::vector<Event> events = {{1, A, B}, {2, A, B}, {3, B, C}, {4, A, B}, {5, B, C}};
  const auto state = Run(Reach::Infinite(), events);
  const TemporalView* ba = state.View(B, A);
  CHECK(ba->direct_count == 3);
  CHECK(ba->indirect_count == 0);
  const TemporalView* ca = state.View(C, A);
  CHECK(ca->timestamp == 4);
  CHECK(ca->indirect_count == 2);
  CHECK(ca->direct_count == 0);
  // A relay with nothing new does not count.
  const auto stale = Run(Reach::Infinite(), {{1, A, B}, {2, B, C}, {3, B, C}});
  CHECK(stale.View(C, A)->indirect_count == 1);
}

TEST_CASE("latency accumulators") {
  const auto state = Run(Reach::Infinite(), {{0, A, B}, {4, A, B}});
  const TemporalView* v = state.View(B, A);
  CHECK(v->last_update_time == 4);
  CHECK(v->last_update_latency == 0);
  CHECK(v->accumulated_duration == 4);
  CHECK(v->twice_latency_area == 16);
}

TEST_CASE("matches brute force on random streams") {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const auto events = testing::RandomEvents(rng, n, 20 + 5 * trial, 0.2);
    const auto ts = testing::BruteForceTimestamps(events, n, testing::kInf);
    const auto dist = testing::BruteForceDistances(events, n, testing::kInf);
    const auto state = Run(Reach::Infinite(), events);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const TemporalView* view = state.View(v, u);
        if (ts[u][v] == testing::kNegInf) {
          CHECK(view == nullptr);
          continue;
        }
        REQUIRE(view != nullptr);
        CHECK(view->timestamp == ts[u][v]);
        CHECK(view->dist == dist[u][v]);
      }
    }
  }
}

TEST_CASE("replay until stops before the bound") {
  const std::vector<Event> events = {{1, A, B}, {2, B, C}, {2, C, D}, {3, D, A}};
  ClockState state(Reach::Infinite());
  std::size_t cursor = state.ReplayUntil(events, 0, 2);
  CHECK(cursor == 1);
  CHECK(state.quiesced());
  cursor = state.ReplayUntil(events, cursor, 3);
  CHECK(cursor == 3);
  CHECK(state.View(C, A)->timestamp == 1);
  CHECK(state.View(D, A) == nullptr);
  cursor = state.ReplayUntil(events, cursor, 100);
  CHECK(cursor == 4);
  CHECK(DumpOf(state) == DumpOf(Run(Reach::Infinite(), events)));
}

TEST_CASE("dump uses names when given") {
  auto nodes = testing::NamedNodes(3);
  const auto state = Run(Reach::Infinite(), kS1);
  std::ostringstream out;
  state.Dump(out, nodes.get());
  CHECK(out.str() ==
        "v0,v1,2,2,0,1\n"
        "v0,v2,3,1,1,0\n"
        "v1,v0,1,1,1,0\n"
        "v2,v0,1,2,0,1\n"
        "v2,v1,2,1,1,0\n");
}

}  // namespace
}  // namespace vclp
