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

#include "vclp/runner.h"

#include <array>
#include <cstdio>
#include <sstream>

#include "vclp/errors.h"
#include "vclp/experiment.h"
#include "vclp/learn.h"
#include "vclp/parallel.h"
#include "vclp/random.h"

namespace vclp {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 3> kFamilies = {kFamilyVclp, kFamilyBaseline,
                                                  kFamilyCombined};
constexpr std::size_t kBaselineIndex = 1;

struct Cell {
  std::string status = "ok";
  std::size_t train_positives = 0;
  std::size_t train_negatives = 0;
  std::size_t test_positives = 0;
  std::size_t test_negatives = 0;
  std::array<double, 3> aupr{};
  std::array<PrCurve, 3> curves;
};

FeatureTable FamilyTable(const StratumData& data, std::size_t family) {
  switch (family) {
    case 0:
      return data.clock_features;
    case 1:
      return data.baseline_features;
    default:
      return FeatureTable::Concat(data.clock_features, data.baseline_features);
  }
}

json ConfigJson(const ExperimentConfig& c) {
  json reaches = json::array();
  for (const auto& r : c.reach_set) reaches.push_back(r.ToString());
  return {{"train_width_days", c.train_width_days},
          {"test_width_days", c.test_width_days},
          {"shift_days", c.shift_days.value_or(c.test_width_days)},
          {"strata", c.strata},
          {"reach_set", reaches},
          {"exclude_reciprocal", c.exclude_reciprocal},
          {"ratio", c.boost.ratio},
          {"bags", c.boost.bags},
          {"trees", c.boost.trees},
          {"learning_rate", c.boost.learning_rate},
          {"subsample", c.boost.subsample},
          {"max_depth", c.boost.max_tree_depth},
          {"seed", c.boost.seed}};
}

std::string CurveName(std::uint32_t stratum, std::size_t realization, const char* family) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "N%u_r%03zu_%s", stratum, realization, family);
  return buf;
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

}  // namespace

ExperimentResult RunExperiment(const EventStream& stream, const ExperimentConfig& config,
                               const RunOptions& options) {
  config.Validate();
  const auto plan = PlanRealizations(stream.t_min(), stream.t_max(), config.train_width(),
                                     config.test_width(), config.shift());
  if (plan.empty()) {
    throw DataError("event span is shorter than one realization (train + 2 x test width)");
  }
  DatasetOptions dataset_options;
  dataset_options.reaches = config.reach_set;
  dataset_options.strata = config.strata;
  dataset_options.exclude_reciprocal = config.exclude_reciprocal;

  const std::size_t strata = config.strata.size();
  std::vector<std::vector<Cell>> cells(plan.size(), std::vector<Cell>(strata));
  ParallelFor(plan.size(), options.jobs, [&](std::size_t k) {
    const RealizationData data = BuildStratifiedDatasets(stream, plan[k], dataset_options);
    for (std::size_t j = 0; j < strata; ++j) {
      const StratumData& train = data.train.strata[j];
      const StratumData& test = data.test.strata[j];
      Cell& cell = cells[k][j];
      cell.train_positives = train.positives();
      cell.train_negatives = train.negatives();
      cell.test_positives = test.positives();
      cell.test_negatives = test.negatives();
      if (cell.train_positives == 0 || cell.train_negatives == 0) {
        cell.status = "untrainable";
        continue;
      }
      if (cell.test_positives == 0) {
        cell.status = "no_test_positives";
        continue;
      }
      BoostParams params = config.boost;
      params.seed = MixSeed(MixSeed(config.boost.seed, k), train.stratum);
      for (std::size_t f = 0; f < kFamilies.size(); ++f) {
        const Ensemble model = FitBagged(FamilyTable(train, f), train.labels, params);
        const auto scores = model.Score(FamilyTable(test, f));
        cell.curves[f] = PrecisionRecallCurve(scores, test.labels);
        cell.aupr[f] = AveragePrecision(cell.curves[f]);
      }
    }
  });

  ExperimentResult result;
  json& report = result.report;
  report["schema"] = "vclp-report/1";
  report["dataset"] = options.dataset;
  report["variant"] = config.exclude_reciprocal ? "non_reciprocal" : "all";
  report["baseline"] =
      "topological block: degrees, strengths, common neighbors, Adamic-Adar, Jaccard, "
      "preferential attachment, directed geodesic, PropFlow";
  report["config"] = ConfigJson(config);
  report["stream"] = {{"events", stream.size()},
                      {"nodes", stream.node_count()},
                      {"t_min", stream.t_min()},
                      {"t_max", stream.t_max()}};
  json windows = json::array();
  for (const auto& r : plan) {
    windows.push_back({{"index", r.index},
                       {"t0", r.t0},
                       {"t1", r.t1},
                       {"t2", r.t2},
                       {"test_t0", r.test_t0},
                       {"test_t1", r.test_t1},
                       {"test_t2", r.test_t2}});
  }
  report["realizations"] = plan.size();
  report["windows"] = windows;
  json warnings = json::array();

  json strata_json = json::array();
  for (std::size_t j = 0; j < strata; ++j) {
    const std::uint32_t n = config.strata[j];
    json per_realization = json::array();
    std::array<std::vector<double>, 3> auprs;
    std::vector<std::size_t> scored;
    double train_pos = 0, train_neg = 0, test_pos = 0, test_neg = 0;
    for (std::size_t k = 0; k < plan.size(); ++k) {
      const Cell& cell = cells[k][j];
      train_pos += static_cast<double>(cell.train_positives);
      train_neg += static_cast<double>(cell.train_negatives);
      test_pos += static_cast<double>(cell.test_positives);
      test_neg += static_cast<double>(cell.test_negatives);
      json entry = {{"index", k},
                    {"status", cell.status},
                    {"train_positives", cell.train_positives},
                    {"train_negatives", cell.train_negatives},
                    {"test_positives", cell.test_positives},
                    {"test_negatives", cell.test_negatives}};
      if (cell.status == "ok") {
        json aupr;
        for (std::size_t f = 0; f < kFamilies.size(); ++f) {
          aupr[kFamilies[f]] = cell.aupr[f];
          auprs[f].push_back(cell.aupr[f]);
          result.curves.push_back({CurveName(n, k, kFamilies[f]), cell.curves[f]});
        }
        entry["aupr"] = aupr;
        scored.push_back(k);
      }
      per_realization.push_back(entry);
    }

    const double count = static_cast<double>(plan.size());
    json families = json::object();
    for (std::size_t f = 0; f < kFamilies.size(); ++f) {
      const auto relative = RelativeToBaseline(auprs[f], auprs[kBaselineIndex]);
      json dropped = json::array();
      for (auto d : relative.dropped) {
        dropped.push_back(scored[d]);
        if (f == 0) {
          warnings.push_back("N=" + std::to_string(n) + " realization " +
                             std::to_string(scored[d]) +
                             ": baseline AUPR is zero, realization dropped");
        }
      }
      families[kFamilies[f]] = {
          {"auprs", auprs[f]},
          {"mean_aupr", auprs[f].empty() ? json(nullptr) : json(Mean(auprs[f]))},
          {"relative", relative.ratios},
          {"mean_relative", relative.mean ? json(*relative.mean) : json(nullptr)},
          {"dropped_realizations", dropped}};
    }
    if (scored.empty()) {
      warnings.push_back("N=" + std::to_string(n) + ": no trainable realization");
    }
    strata_json.push_back({{"N", n},
                           {"trainable", !scored.empty()},
                           {"scored_realizations", scored.size()},
                           {"avg_train_positives", train_pos / count},
                           {"avg_train_negatives", train_neg / count},
                           {"avg_test_positives", test_pos / count},
                           {"avg_test_negatives", test_neg / count},
                           {"families", families},
                           {"per_realization", per_realization}});
    result.trainable = result.trainable || !scored.empty();
  }
  report["strata"] = strata_json;
  report["warnings"] = warnings;
  return result;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string RenderReportTable(const std::vector<json>& reports, TableFormat format) {
  struct Column {
    std::string dataset;
    std::uint32_t n;
    std::array<std::string, 2> cells;  // vclp, combined
  };
  std::vector<Column> columns;
  for (const auto& report : reports) {
    try {
      std::string dataset = report.at("dataset").get<std::string>();
      if (report.at("variant").get<std::string>() != "all") dataset += " (non-reciprocal)";
      for (const auto& stratum : report.at("strata")) {
        Column col{dataset, stratum.at("N").get<std::uint32_t>(), {"-", "-"}};
        const auto& families = stratum.at("families");
        const char* names[] = {kFamilyVclp, kFamilyCombined};
        for (std::size_t i = 0; i < 2; ++i) {
          const auto& mean = families.at(names[i]).at("mean_relative");
          if (!mean.is_null()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", mean.get<double>());
            col.cells[i] = buf;
          }
        }
        columns.push_back(std::move(col));
      }
    } catch (const json::exception& e) {
      throw DataError(std::string("malformed report: ") + e.what());
    }
  }

  std::ostringstream out;
  const char* row_names[] = {"VCLP", "Combined"};
  if (format == TableFormat::kCsv) {
    out << "dataset,N,family,mean_relative\n";
    for (const auto& col : columns) {
      for (std::size_t i = 0; i < 2; ++i) {
        out << CsvField(col.dataset) << ',' << col.n << ',' << row_names[i] << ','
            << col.cells[i] << '\n';
      }
    }
    return out.str();
  }

  constexpr int kLabelWidth = 10;
  constexpr int kCellWidth = 7;
  auto pad = [](const std::string& s, int width) {
    return s.size() >= static_cast<std::size_t>(width) ? s + " "
                                                       : s + std::string(width - s.size(), ' ');
  };
  auto emit = [&out](std::string line) {
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  };
  // Dataset header row: each name spans its strata.
  std::string header = pad("", kLabelWidth);
  for (std::size_t i = 0; i < columns.size();) {
    std::size_t j = i;
    while (j < columns.size() && columns[j].dataset == columns[i].dataset) ++j;
    header += pad(columns[i].dataset, kCellWidth * static_cast<int>(j - i));
    i = j;
  }
  emit(header);
  std::string n_row = pad("N", kLabelWidth);
  for (const auto& col : columns) n_row += pad(std::to_string(col.n), kCellWidth);
  emit(n_row);
  for (std::size_t i = 0; i < 2; ++i) {
    std::string row = pad(row_names[i], kLabelWidth);
    for (const auto& col : columns) row += pad(col.cells[i], kCellWidth);
    emit(row);
  }
  return out.str();
}

}  // namespace vclp
