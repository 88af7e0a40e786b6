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

#ifndef VCLP_CONFIG_H_
#define VCLP_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vclp/clock.h"
#include "vclp/learn.h"

namespace vclp {

// Experiment settings, read from `key = value` text. Keys:
//   train_width_days, test_width_days, shift_days, strata, reach_set,
//   exclude_reciprocal, ratio, bags, trees, learning_rate, subsample,
//   max_depth, seed
// Lists are comma-separated; `#` starts a comment.
struct ExperimentConfig {
  double train_width_days = 120.0;
  double test_width_days = 7.0;
  // Defaults to the test width.
  std::optional<double> shift_days;
  std::vector<std::uint32_t> strata{2, 3, 4};
  std::vector<Reach> reach_set{Reach(1), Reach(2), Reach::Infinite()};
  bool exclude_reciprocal = false;
  BoostParams boost;

  Time train_width() const;
  Time test_width() const;
  Time shift() const;

  // Sets one key. Throws std::invalid_argument for an unknown key or a bad
  // value.
  void Set(std::string_view key, std::string_view value);
  // Throws std::invalid_argument when the combination is unusable.
  void Validate() const;
};

// Throws DataError naming the line for malformed input.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig ReadConfigFile(const std::string& path);

}  // namespace vclp

#endif  // VCLP_CONFIG_H_
