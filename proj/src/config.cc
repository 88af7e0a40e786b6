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

#include "vclp/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "vclp/errors.h"
#include "vclp/experiment.h"

namespace vclp {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid value '" + std::string(text) + "' for " +
                                std::string(key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("invalid boolean '" + std::string(text) + "' for " +
                              std::string(key));
}

std::vector<std::string_view> SplitList(std::string_view text) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = text.find(',');
    items.push_back(Trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return items;
}

Time DaysToSeconds(double days) {
  return static_cast<Time>(std::llround(days * static_cast<double>(kSecondsPerDay)));
}

}  // namespace

Time ExperimentConfig::train_width() const { return DaysToSeconds(train_width_days); }
Time ExperimentConfig::test_width() const { return DaysToSeconds(test_width_days); }
Time ExperimentConfig::shift() const {
  return DaysToSeconds(shift_days.value_or(test_width_days));
}

void ExperimentConfig::Set(std::string_view key, std::string_view raw) {
  const std::string_view value = Trim(raw);
  if (key == "train_width_days") {
    train_width_days = ParseNumber<double>(key, value);
  } else if (key == "test_width_days") {
    test_width_days = ParseNumber<double>(key, value);
  } else if (key == "shift_days") {
    shift_days = ParseNumber<double>(key, value);
  } else if (key == "strata") {
    strata.clear();
    for (auto item : SplitList(value)) strata.push_back(ParseNumber<std::uint32_t>(key, item));
  } else if (key == "reach_set") {
    reach_set.clear();
    for (auto item : SplitList(value)) reach_set.push_back(Reach::Parse(item));
  } else if (key == "exclude_reciprocal") {
    exclude_reciprocal = ParseBool(key, value);
  } else if (key == "ratio") {
    boost.ratio = ParseNumber<double>(key, value);
  } else if (key == "bags") {
    boost.bags = ParseNumber<std::uint32_t>(key, value);
  } else if (key == "trees") {
    boost.trees = ParseNumber<std::uint32_t>(key, value);
  } else if (key == "learning_rate") {
    boost.learning_rate = ParseNumber<double>(key, value);
  } else if (key == "subsample") {
    boost.subsample = ParseNumber<double>(key, value);
  } else if (key == "max_depth") {
    boost.max_tree_depth = ParseNumber<std::uint32_t>(key, value);
  } else if (key == "seed") {
    boost.seed = ParseNumber<std::uint64_t>(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::Validate() const {
  if (train_width() <= 0 || test_width() <= 0 || shift() <= 0) {
    throw std::invalid_argument("window widths and shift must be positive");
  }
  if (strata.empty()) throw std::invalid_argument("strata must not be empty");
  for (auto n : strata) {
    if (n < 2) throw std::invalid_argument("strata start at distance 2");
  }
  if (reach_set.empty()) throw std::invalid_argument("reach_set must not be empty");
  boost.Validate();
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = Trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      config.Set(Trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw DataError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return config;
}

ExperimentConfig ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  return ParseConfig(in);
}

}  // namespace vclp
