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

// Command-line front end: synth, validate, features, experiment, report.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 untrainable
// experiment.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vclp/clock.h"
#include "vclp/config.h"
#include "vclp/errors.h"
#include "vclp/event_stream.h"
#include "vclp/experiment.h"
#include "vclp/features.h"
#include "vclp/graph.h"
#include "vclp/runner.h"
#include "vclp/synth.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitUntrainable = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* const kConfigKeys[] = {
    "train_width_days", "test_width_days", "shift_days", "strata",  "reach_set",
    "exclude_reciprocal", "ratio",         "bags",       "trees",   "learning_rate",
    "subsample",        "max_depth"};

std::string FlagName(const std::string& key) {
  std::string flag = "--" + key;
  for (auto& c : flag) {
    if (c == '_') c = '-';
  }
  return flag;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw vclp::DataError("cannot write '" + path + "'");
  return out;
}

std::vector<vclp::Dyad> ReadDyads(const std::string& path, const vclp::NodeTable& nodes) {
  std::ifstream in(path);
  if (!in) throw vclp::DataError("cannot open dyad file '" + path + "'");
  std::vector<vclp::Dyad> dyads;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line == "src,dst")) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw vclp::DataError("dyad file line " + std::to_string(line_no) + ": expected src,dst");
    }
    const auto s = nodes.Find(line.substr(0, comma));
    const auto r = nodes.Find(line.substr(comma + 1));
    if (s < 0 || r < 0) {
      throw vclp::DataError("dyad file line " + std::to_string(line_no) + ": unknown node");
    }
    if (s == r) {
      throw vclp::DataError("dyad file line " + std::to_string(line_no) + ": self-dyad");
    }
    dyads.push_back({static_cast<vclp::NodeId>(s), static_cast<vclp::NodeId>(r)});
  }
  return dyads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social vector clock link prediction toolkit"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  app.add_option("--seed", seed, "Random seed for synth and experiment");
  app.add_option("--jobs", jobs, "Worker threads for realizations")->check(CLI::PositiveNumber);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic event stream");
  synth->fallthrough();
  vclp::SynthParams synth_params;
  std::string synth_out;
  synth->add_option("--nodes", synth_params.nodes, "Node count")->capture_default_str();
  synth->add_option("--days", synth_params.days, "Duration in days")->capture_default_str();
  synth->add_option("--base-rate", synth_params.base_rate,
                    "Spontaneous messages per node-day")->capture_default_str();
  synth->add_option("--reciprocity-prob", synth_params.reciprocity_prob)->capture_default_str();
  synth->add_option("--cascade-prob", synth_params.cascade_prob)->capture_default_str();
  synth->add_option("--closure-prob", synth_params.closure_prob)->capture_default_str();
  synth->add_option("--start", synth_params.start, "First epoch second")->capture_default_str();
  synth->add_option("-o,--out", synth_out, "Output event CSV (stdout when omitted)");

  // validate
  auto* validate = app.add_subcommand("validate", "Parse an event file and print a summary");
  std::string validate_path;
  validate->add_option("events", validate_path, "Event CSV")->required();

  // features
  auto* features = app.add_subcommand("features", "Dump dyad features at one instant");
  features->fallthrough();
  std::string features_events, features_out, features_dyads, features_dump;
  std::optional<vclp::Time> features_at, features_from;
  std::string features_reach = "1,2,inf";
  std::string features_strata = "2,3,4";
  bool features_exclude = false;
  features->add_option("--events", features_events, "Event CSV")->required();
  features->add_option("--at", features_at,
                       "Observation instant (default: one second after the last event)");
  features->add_option("--from", features_from,
                       "Start of the aggregation window (default: first event)");
  features->add_option("--reach-set", features_reach)->capture_default_str();
  features->add_option("--strata", features_strata,
                       "Candidate strata when no dyad file is given")->capture_default_str();
  features->add_flag("--exclude-reciprocal", features_exclude);
  features->add_option("--dyads", features_dyads, "src,dst file of dyads to extract");
  features->add_option("--clock-dump", features_dump,
                       "Write one clock state dump per reach to <prefix>.mu<reach>.csv");
  features->add_option("-o,--out", features_out, "Output feature CSV (stdout when omitted)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run the supervised evaluation");
  experiment->fallthrough();
  std::string exp_events, exp_config, exp_out = "vclp_out", exp_name, exp_profile = "desk";
  experiment->add_option("--events", exp_events, "Event CSV")->required();
  experiment->add_option("--config", exp_config, "key = value config file");
  experiment->add_option("--out", exp_out, "Output directory")->capture_default_str();
  experiment->add_option("--name", exp_name, "Dataset name for the report");
  experiment->add_option("--profile", exp_profile, "Learner profile: desk or full")
      ->check(CLI::IsMember({"desk", "full"}))
      ->capture_default_str();
  std::map<std::string, std::string> overrides;
  for (const char* key : kConfigKeys) {
    experiment->add_option_function<std::string>(
        FlagName(key), [&overrides, key](const std::string& v) { overrides[key] = v; },
        std::string("Override config key ") + key);
  }

  // report
  auto* report = app.add_subcommand("report", "Tabulate mean relative scores");
  std::vector<std::string> report_paths;
  std::string report_format = "text";
  report->add_option("reports", report_paths, "Report JSON files")->required();
  report->add_option("--format", report_format)
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      if (seed) synth_params.seed = *seed;
      try {
        synth_params.Validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto stream = vclp::Synthesize(synth_params);
      if (synth_out.empty()) {
        vclp::WriteEvents(stream, std::cout);
      } else {
        auto out = OpenOutput(synth_out);
        vclp::WriteEvents(stream, out);
      }
      return 0;
    }

    if (validate->parsed()) {
      const auto stream = vclp::ReadEventFile(validate_path);
      std::cout << "events " << stream.size() << "\n"
                << "nodes " << stream.node_count() << "\n"
                << "t_min " << stream.t_min() << "\n"
                << "t_max " << stream.t_max() << "\n"
                << "span_days "
                << static_cast<double>(stream.t_max() - stream.t_min()) / vclp::kSecondsPerDay
                << "\n";
      return 0;
    }

    if (features->parsed()) {
      vclp::ExperimentConfig parsed;
      try {
        parsed.Set("reach_set", features_reach);
        parsed.Set("strata", features_strata);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto stream = vclp::ReadEventFile(features_events);
      const vclp::Time at = features_at.value_or(stream.t_max() + 1);
      const vclp::Time from = features_from.value_or(stream.t_min());
      if (from > at) throw UsageError("--from must not exceed --at");

      std::vector<vclp::ClockState> clocks;
      for (auto reach : parsed.reach_set) clocks.emplace_back(reach, stream.node_count());
      for (auto& clock : clocks) clock.ReplayUntil(stream.events(), 0, at);
      if (!features_dump.empty()) {
        for (const auto& clock : clocks) {
          auto out = OpenOutput(features_dump + ".mu" + clock.reach().ToString() + ".csv");
          clock.Dump(out, &stream.nodes());
        }
      }

      const auto graph = vclp::AggregatedDigraph::Aggregate(stream.Slice(from, at));
      std::vector<vclp::Dyad> dyads;
      if (!features_dyads.empty()) {
        dyads = ReadDyads(features_dyads, stream.nodes());
      } else {
        for (auto& stratum : vclp::EnumerateStrata(graph, parsed.strata, features_exclude)) {
          dyads.insert(dyads.end(), stratum.begin(), stratum.end());
        }
      }
      std::vector<const vclp::ClockState*> states;
      for (const auto& c : clocks) states.push_back(&c);
      vclp::ClockFeatureExtractor extractor(states, at, stream.t_min());
      const auto table = vclp::FeatureTable::Concat(extractor.Matrix(dyads),
                                                    vclp::BaselineMatrix(graph, dyads));
      if (features_out.empty()) {
        vclp::WriteFeatureCsv(dyads, table, stream.nodes(), std::cout);
      } else {
        auto out = OpenOutput(features_out);
        vclp::WriteFeatureCsv(dyads, table, stream.nodes(), out);
      }
      return 0;
    }

    if (experiment->parsed()) {
      vclp::ExperimentConfig config;
      if (!exp_config.empty()) config = vclp::ReadConfigFile(exp_config);
      try {
        if (exp_profile == "full") {
          const auto full = vclp::BoostParams::Full();
          config.boost.trees = full.trees;
          config.boost.learning_rate = full.learning_rate;
          config.boost.subsample = full.subsample;
          config.boost.bags = full.bags;
        }
        for (const auto& [key, value] : overrides) config.Set(key, value);
        if (seed) config.boost.seed = *seed;
        config.Validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto stream = vclp::ReadEventFile(exp_events);
      vclp::RunOptions options;
      options.jobs = jobs;
      options.dataset = exp_name.empty()
                            ? std::filesystem::path(exp_events).stem().string()
                            : exp_name;
      const auto result = vclp::RunExperiment(stream, config, options);

      const std::filesystem::path out_dir(exp_out);
      std::filesystem::create_directories(out_dir / "pr");
      {
        auto out = OpenOutput((out_dir / "report.json").string());
        out << result.report.dump(2) << "\n";
      }
      for (const auto& curve : result.curves) {
        auto out = OpenOutput((out_dir / "pr" / (curve.name + ".csv")).string());
        vclp::WritePrCsv(curve.curve, out);
      }
      for (const auto& w : result.report.at("warnings")) {
        std::cerr << "warning: " << w.get<std::string>() << "\n";
      }
      std::cout << vclp::RenderReportTable({result.report}, vclp::TableFormat::kText);
      if (!result.trainable) {
        std::cerr << "error: every stratum is untrainable\n";
        return kExitUntrainable;
      }
      return 0;
    }

    if (report->parsed()) {
      std::vector<nlohmann::json> reports;
      for (const auto& path : report_paths) {
        std::ifstream in(path);
        if (!in) throw vclp::DataError("cannot open report '" + path + "'");
        try {
          reports.push_back(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
          throw vclp::DataError("report '" + path + "': " + e.what());
        }
      }
      std::cout << vclp::RenderReportTable(reports, report_format == "csv"
                                                        ? vclp::TableFormat::kCsv
                                                        : vclp::TableFormat::kText);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const vclp::UntrainableError& e) {
    std::cerr << "untrainable: " << e.what() << "\n";
    return kExitUntrainable;
  } catch (const vclp::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
