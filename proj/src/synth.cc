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

#include "vclp/synth.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "vclp/random.h"

namespace vclp {
namespace {

constexpr double kDay = 86400.0;
constexpr double kForwardDelayMean = 6 * 3600.0;
constexpr double kClosureDelayMean = 2 * kDay;
constexpr double kKnownRecipientProb = 0.85;
constexpr double kSameGroupProb = 0.7;
constexpr std::uint32_t kGroupSize = 25;
constexpr std::uint32_t kInitialAcquaintances = 3;

struct Scheduled {
  double time;
  std::uint64_t seq;
  NodeId sender;
  NodeId receiver;
  MessageKind kind;

  bool operator>(const Scheduled& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

std::uint64_t PairKey(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

class Simulator {
 public:
  explicit Simulator(const SynthParams& p)
      : p_(p),
        rng_(p.seed),
        groups_(std::max<std::uint32_t>(1, p.nodes / kGroupSize)),
        contacts_(p.nodes),
        last_heard_(p.nodes, kNobody),
        rate_(p.nodes) {}

  std::vector<SynthEvent> Run() {
    // Heavy-tailed activity with unit mean, spread over the node population.
    double total = 0.0;
    for (auto& r : rate_) {
      r = std::exp(0.8 * Normal() - 0.32);
      total += r;
    }
    cumulative_.resize(rate_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < rate_.size(); ++i) {
      acc += rate_[i] / total;
      cumulative_[i] = acc;
    }
    for (NodeId n = 0; n < p_.nodes; ++n) {
      for (std::uint32_t k = 0; k < kInitialAcquaintances; ++k) {
        const NodeId other = RandomGroupMember(n);
        if (other != n) Befriend(n, other);
      }
    }

    const double horizon = p_.days * kDay;
    const double spontaneous_per_second = p_.base_rate * p_.nodes / kDay;
    double next_spontaneous = Exponential(rng_, 1.0 / spontaneous_per_second);
    while (true) {
      const bool take_scheduled = !queue_.empty() && queue_.top().time <= next_spontaneous;
      if (take_scheduled) {
        const Scheduled s = queue_.top();
        queue_.pop();
        if (s.time >= horizon) break;
        Emit(s.time, s.sender, s.receiver, s.kind);
        continue;
      }
      if (next_spontaneous >= horizon) break;
      const double now = next_spontaneous;
      next_spontaneous += Exponential(rng_, 1.0 / spontaneous_per_second);
      const NodeId sender = PickActiveNode();
      const NodeId receiver = PickRecipient(sender);
      if (receiver != sender) Emit(now, sender, receiver, MessageKind::kSpontaneous);
    }
    return std::move(out_);
  }

 private:
  static constexpr NodeId kNobody = static_cast<NodeId>(-1);

  double Normal() {
    const double u1 = 1.0 - UniformUnit(rng_);
    const double u2 = UniformUnit(rng_);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  NodeId PickActiveNode() {
    const double u = UniformUnit(rng_);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<NodeId>(
        std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1));
  }

  NodeId RandomGroupMember(NodeId n) {
    const std::uint32_t group = n % groups_;
    const std::uint32_t members = (p_.nodes - group + groups_ - 1) / groups_;
    return group + groups_ * static_cast<NodeId>(UniformIndex(rng_, members));
  }

  NodeId PickRecipient(NodeId sender) {
    const auto& known = contacts_[sender];
    if (!known.empty() && Bernoulli(rng_, kKnownRecipientProb)) {
      return known[UniformIndex(rng_, known.size())];
    }
    if (Bernoulli(rng_, kSameGroupProb)) return RandomGroupMember(sender);
    return static_cast<NodeId>(UniformIndex(rng_, p_.nodes));
  }

  void Befriend(NodeId a, NodeId b) {
    if (acquainted_.insert(PairKey(std::min(a, b), std::max(a, b))).second) {
      contacts_[a].push_back(b);
      contacts_[b].push_back(a);
    }
  }

  void Schedule(double time, NodeId s, NodeId r, MessageKind kind) {
    queue_.push({time, seq_++, s, r, kind});
  }

  void Emit(double time, NodeId s, NodeId r, MessageKind kind) {
    out_.push_back({{p_.start + static_cast<Time>(std::floor(time)), s, r}, kind});
    Befriend(s, r);
    sent_.insert(PairKey(s, r));
    // The sender's freshest source is what the receiver hears about.
    const NodeId sender_source = last_heard_[s];
    last_heard_[r] = s;
    if (kind == MessageKind::kReply) return;

    if (Bernoulli(rng_, p_.reciprocity_prob)) {
      const auto delay = kMinReplyDelay +
                         static_cast<Time>(UniformIndex(rng_, kMaxReplyDelay - kMinReplyDelay + 1));
      // Whole seconds keep the reply inside the delay window after flooring.
      Schedule(std::floor(time) + static_cast<double>(delay), r, s, MessageKind::kReply);
    }
    if (Bernoulli(rng_, p_.cascade_prob)) {
      const auto& known = contacts_[r];
      const NodeId next = known[UniformIndex(rng_, known.size())];
      if (next != s) {
        Schedule(time + Exponential(rng_, kForwardDelayMean), r, next, MessageKind::kForward);
      }
    }
    if (Bernoulli(rng_, p_.closure_prob)) {
      if (sender_source != kNobody && sender_source != r &&
          !sent_.count(PairKey(r, sender_source))) {
        Schedule(time + Exponential(rng_, kClosureDelayMean), r, sender_source,
                 MessageKind::kClosure);
      }
    }
  }

  const SynthParams& p_;
  Rng rng_;
  std::uint32_t groups_;
  std::vector<std::vector<NodeId>> contacts_;
  std::unordered_set<std::uint64_t> acquainted_;
  std::unordered_set<std::uint64_t> sent_;
  std::vector<NodeId> last_heard_;
  std::vector<double> rate_;
  std::vector<double> cumulative_;
  std::priority_queue<Scheduled, std::vector<Scheduled>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  std::vector<SynthEvent> out_;
};

}  // namespace

void SynthParams::Validate() const {
  if (nodes < 3) throw std::invalid_argument("synth needs at least 3 nodes");
  if (!(days > 0.0)) throw std::invalid_argument("synth duration must be positive");
  if (!(base_rate > 0.0)) throw std::invalid_argument("base rate must be positive");
  for (double p : {reciprocity_prob, cascade_prob, closure_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (start < 0) throw std::invalid_argument("start time must be non-negative");
}

std::vector<SynthEvent> SimulateMessages(const SynthParams& params) {
  params.Validate();
  return Simulator(params).Run();
}

EventStream Synthesize(const SynthParams& params) {
  const auto messages = SimulateMessages(params);
  auto nodes = std::make_shared<NodeTable>();
  std::vector<NodeId> remap(params.nodes, static_cast<NodeId>(-1));
  auto intern = [&](NodeId n) {
    if (remap[n] == static_cast<NodeId>(-1)) remap[n] = nodes->Intern("u" + std::to_string(n));
    return remap[n];
  };
  std::vector<Event> events;
  events.reserve(messages.size());
  for (const auto& m : messages) {
    const NodeId s = intern(m.event.sender);
    const NodeId r = intern(m.event.receiver);
    events.push_back({m.event.time, s, r});
  }
  return EventStream(std::move(events), std::move(nodes));
}

}  // namespace vclp
