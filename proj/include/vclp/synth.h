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

#ifndef VCLP_SYNTH_H_
#define VCLP_SYNTH_H_

#include <cstdint>
#include <vector>

#include "vclp/event_stream.h"

namespace vclp {

// Desk-scale generator of directed message streams with three planted
// mechanisms that make first contacts partly predictable from timing.
struct SynthParams {
  std::uint32_t nodes = 200;
  double days = 180.0;
  // Spontaneous messages per node and day (averaged over nodes).
  double base_rate = 0.5;
  // A received message is answered once, within kMaxReplyDelay.
  double reciprocity_prob = 0.3;
  // A received message is passed on to a random prior contact.
  double cascade_prob = 0.1;
  // A received message prompts a first contact with someone the sender
  // heard from most recently.
  double closure_prob = 0.2;
  std::uint64_t seed = 1;
  // First time stamp of the stream.
  Time start = 1325376000;

  // Throws std::invalid_argument for fewer than 3 nodes, non-positive
  // duration or rate, or a probability outside [0, 1].
  void Validate() const;
};

inline constexpr Time kMinReplyDelay = 60;
inline constexpr Time kMaxReplyDelay = 12 * 3600;

enum class MessageKind : std::uint8_t { kSpontaneous, kReply, kForward, kClosure };

struct SynthEvent {
  Event event;
  MessageKind kind = MessageKind::kSpontaneous;
};

// Time-ordered messages in [start, start + days). Replies trigger nothing.
// Deterministic given the parameters.
std::vector<SynthEvent> SimulateMessages(const SynthParams& params);

// The simulated messages as a stream over nodes named "u0", "u1", ...
EventStream Synthesize(const SynthParams& params);

}  // namespace vclp

#endif  // VCLP_SYNTH_H_
