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

#include <sstream>

#include "doctest.h"
#include "vclp/config.h"
#include "vclp/errors.h"

namespace vclp {
namespace {

ExperimentConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

TEST_CASE("defaults") {
  const ExperimentConfig c = Parse("");
  CHECK(c.train_width() == 120 * 86400);
  CHECK(c.test_width() == 7 * 86400);
  CHECK(c.shift() == c.test_width());
  CHECK(c.strata == std::vector<std::uint32_t>{2, 3, 4});
  CHECK(c.reach_set == std::vector<Reach>{Reach(1), Reach(2), Reach::Infinite()});
  CHECK_FALSE(c.exclude_reciprocal);
  CHECK(c.boost.trees == BoostParams::Desk().trees);
}

TEST_CASE("every key parses") {
  const ExperimentConfig c = Parse(
      "# windows\n"
      "train_width_days = 28\n"
      "test_width_days = 14   # trailing comment\n"
      "shift_days = 3.5\n"
      "strata = 2, 3\n"
      "reach_set = 1,inf\n"
      "exclude_reciprocal = true\n"
      "\n"
      "ratio = 5\n"
      "bags = 2\n"
      "trees = 50\n"
      "learning_rate = 0.1\n"
      "subsample = 0.8\n"
      "max_depth = 4\n"
      "seed = 77\n");
  CHECK(c.train_width() == 28 * 86400);
  CHECK(c.test_width() == 14 * 86400);
  CHECK(c.shift() == 302400);
  CHECK(c.strata == std::vector<std::uint32_t>{2, 3});
  CHECK(c.reach_set == std::vector<Reach>{Reach(1), Reach::Infinite()});
  CHECK(c.exclude_reciprocal);
  CHECK(c.boost.ratio == 5.0);
  CHECK(c.boost.bags == 2);
  CHECK(c.boost.trees == 50);
  CHECK(c.boost.learning_rate == 0.1);
  CHECK(c.boost.subsample == 0.8);
  CHECK(c.boost.max_tree_depth == 4);
  CHECK(c.boost.seed == 77);
}

TEST_CASE("errors carry the line") {
  auto message = [](const std::string& text) {
    try {
      Parse(text);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("trees = 5\ncolour = red\n") == "config line 2: unknown config key 'colour'");
  CHECK(message("trees\n") == "config line 1: expected key = value");
  CHECK(message("\ntrees = many\n").rfind("config line 2:", 0) == 0);
  CHECK(message("strata = 1\n") != "no error");
  CHECK(message("subsample = 0\n") != "no error");
  CHECK(message("reach_set = 0\n") != "no error");
  CHECK(message("exclude_reciprocal = maybe\n") != "no error");
}

TEST_CASE("set validates values") {
  ExperimentConfig c;
  CHECK_THROWS_AS(c.Set("trees", "-3"), std::invalid_argument);
  CHECK_THROWS_AS(c.Set("trees", ""), std::invalid_argument);
  c.Set("exclude_reciprocal", "1");
  CHECK(c.exclude_reciprocal);
  c.Set("test_width_days", "0");
  CHECK_THROWS_AS(c.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace vclp
