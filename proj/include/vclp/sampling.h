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

#ifndef VCLP_SAMPLING_H_
#define VCLP_SAMPLING_H_

#include <cstdint>
#include <span>
#include <vector>

namespace vclp {

// Class-rebalancing resample for one bag: |positives| draws from the
// positive rows and round(ratio * |positives|) draws from the negative rows,
// both with replacement. Returns row indices, positives first. Throws
// UntrainableError without positives (or without negatives when some are
// requested) and std::invalid_argument for ratio <= 0.
std::vector<std::size_t> Undersample(std::span<const std::uint8_t> labels, double ratio,
                                     std::uint64_t seed);

}  // namespace vclp

#endif  // VCLP_SAMPLING_H_
