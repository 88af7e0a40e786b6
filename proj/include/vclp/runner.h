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

#ifndef VCLP_RUNNER_H_
#define VCLP_RUNNER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vclp/config.h"
#include "vclp/event_stream.h"
#include "vclp/metrics.h"

namespace vclp {

// Predictor families trained side by side on identical candidates and
// resamples. Relative scores divide by the baseline family.
inline constexpr const char* kFamilyVclp = "vclp";
inline constexpr const char* kFamilyBaseline = "baseline";
inline constexpr const char* kFamilyCombined = "combined";

struct NamedCurve {
  // e.g. "N2_r003_combined"
  std::string name;
  PrCurve curve;
};

struct ExperimentResult {
  nlohmann::json report;
  std::vector<NamedCurve> curves;
  // True when at least one stratum produced a scored realization.
  bool trainable = false;
};

struct RunOptions {
  std::string dataset = "dataset";
  std::size_t jobs = 1;
};

// Plans realizations, builds per-stratum datasets, fits the three predictor
// families and scores them on the test windows. Throws DataError when the
// plan is empty. The report layout is documented in docs/report_schema.md.
ExperimentResult RunExperiment(const EventStream& stream, const ExperimentConfig& config,
                               const RunOptions& options);

enum class TableFormat { kText, kCsv };

// Mean relative scores per dataset and stratum for the vclp and combined
// families; "-" marks strata without scored realizations. Throws DataError
// for reports that do not follow the schema.
std::string RenderReportTable(const std::vector<nlohmann::json>& reports, TableFormat format);

// RFC 4180 quoting.
std::string CsvField(const std::string& text);

}  // namespace vclp

#endif  // VCLP_RUNNER_H_
