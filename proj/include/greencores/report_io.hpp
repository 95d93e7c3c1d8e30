/*
 * Copyright (c) 2026 The greencores authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "greencores/sim_engine.hpp"

namespace greencores {

/// Scalar summary of a report (time series and event log excluded).
nlohmann::json report_to_json(const SimReport& report);
SimReport report_from_json(const nlohmann::json& j);

// time_s,sum_cg_used,sum_m,sum_l,fleet_power_w,capacity_fraction
void write_time_series_csv(std::ostream& out, std::span<const TimeSeriesRow> rows);
std::vector<TimeSeriesRow> parse_time_series_csv(std::istream& in);

struct PolicyComparison {
  std::string policy;
  double normalized_harvest = 0.0;
  double eviction_rate_critical = 0.0;
  double eviction_rate_best_effort = 0.0;
  SimReport report;
};

/// Per-policy results on one shared trace. Harvest is divided by the best
/// policy's harvest so the leader reads 1.0; when no policy harvests, all
/// normalized values are 0.
struct CompareReport {
  std::uint64_t trace_hash = 0;
  std::vector<PolicyComparison> policies;
};

CompareReport build_compare_report(std::vector<SimReport> reports);
nlohmann::json compare_to_json(const CompareReport& report);
// policy,normalized_harvest,evictions_critical,evictions_best_effort
void write_compare_csv(std::ostream& out, const CompareReport& report);

}  // namespace greencores
