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

#include "greencores/report_io.hpp"

#include <algorithm>
#include <string>

#include "greencores/kv_document.hpp"

namespace greencores {

using nlohmann::json;

json report_to_json(const SimReport& r) {
  json j;
  j["policy"] = r.policy;
  j["trace_hash"] = r.trace_hash;
  j["horizon_s"] = r.horizon;
  j["harvested_green_core_seconds"] = r.harvested_green_core_seconds;
  j["harvested_energy_joules"] = r.harvested_energy_joules;
  j["evictions"] = {{"critical", r.evictions_critical},
                    {"best_effort", r.evictions_best_effort},
                    {"total", r.evictions_total()}};
  j["eviction_rate"] = r.eviction_rate;
  j["total_arrivals"] = r.total_arrivals;
  j["redeployments"] = r.redeployments;
  j["placement_failures"] = r.placement_failures;
  j["nlt_samples"] = r.nlt_samples;
  return j;
}

SimReport report_from_json(const json& j) {
  SimReport r;
  r.policy = j.at("policy").get<std::string>();
  r.trace_hash = j.at("trace_hash").get<std::uint64_t>();
  r.horizon = j.at("horizon_s").get<Seconds>();
  r.harvested_green_core_seconds = j.at("harvested_green_core_seconds").get<std::int64_t>();
  r.harvested_energy_joules = j.at("harvested_energy_joules").get<double>();
  r.evictions_critical = j.at("evictions").at("critical").get<std::int64_t>();
  r.evictions_best_effort = j.at("evictions").at("best_effort").get<std::int64_t>();
  r.eviction_rate = j.at("eviction_rate").get<double>();
  r.total_arrivals = j.at("total_arrivals").get<std::int64_t>();
  r.redeployments = j.at("redeployments").get<std::int64_t>();
  r.placement_failures = j.at("placement_failures").get<std::int64_t>();
  r.nlt_samples = j.at("nlt_samples").get<std::vector<double>>();
  return r;
}

void write_time_series_csv(std::ostream& out, std::span<const TimeSeriesRow> rows) {
  out << "time_s,sum_cg_used,sum_m,sum_l,fleet_power_w,capacity_fraction\n";
  for (const auto& row : rows) {
    out << row.time_s << ',' << row.sum_cg_used << ',' << row.sum_m << ',' << row.sum_l << ','
        << format_double(row.fleet_power_w) << ',' << format_double(row.capacity_fraction) << '\n';
  }
}

std::vector<TimeSeriesRow> parse_time_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      trim(line) != "time_s,sum_cg_used,sum_m,sum_l,fleet_power_w,capacity_fraction") {
    throw ValidationError("time series: unexpected header");
  }
  std::vector<TimeSeriesRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (auto comma = rest.find(','); comma != std::string_view::npos; comma = rest.find(',')) {
      f.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    f.push_back(rest);
    if (f.size() != 6) {
      throw ValidationError("time series line " + std::to_string(line_no) + ": expected 6 fields");
    }
    const auto t = parse_int(f[0]);
    const auto cg = parse_int(f[1]);
    const auto m = parse_int(f[2]);
    const auto l = parse_int(f[3]);
    const auto pw = parse_double(f[4]);
    const auto frac = parse_double(f[5]);
    if (!t || !cg || !m || !l || !pw || !frac) {
      throw ValidationError("time series line " + std::to_string(line_no) + ": malformed field");
    }
    rows.push_back({*t, *cg, *m, *l, *pw, *frac});
  }
  return rows;
}

CompareReport build_compare_report(std::vector<SimReport> reports) {
  CompareReport out;
  if (!reports.empty()) {
    out.trace_hash = reports.front().trace_hash;
  }
  std::int64_t best = 0;
  for (const auto& r : reports) {
    if (r.trace_hash != out.trace_hash) {
      throw InvariantViolation("compared runs saw different traces");
    }
    best = std::max(best, r.harvested_green_core_seconds);
  }
  for (auto& r : reports) {
    PolicyComparison pc;
    pc.policy = r.policy;
    pc.normalized_harvest = best > 0 ? static_cast<double>(r.harvested_green_core_seconds) /
                                           static_cast<double>(best)
                                     : 0.0;
    if (r.total_arrivals > 0) {
      const auto n = static_cast<double>(r.total_arrivals);
      pc.eviction_rate_critical = static_cast<double>(r.evictions_critical) / n;
      pc.eviction_rate_best_effort = static_cast<double>(r.evictions_best_effort) / n;
    }
    pc.report = std::move(r);
    out.policies.push_back(std::move(pc));
  }
  return out;
}

json compare_to_json(const CompareReport& report) {
  json j;
  j["trace_hash"] = report.trace_hash;
  j["policies"] = json::array();
  for (const auto& pc : report.policies) {
    j["policies"].push_back({{"policy", pc.policy},
                             {"normalized_harvest", pc.normalized_harvest},
                             {"eviction_rate_critical", pc.eviction_rate_critical},
                             {"eviction_rate_best_effort", pc.eviction_rate_best_effort},
                             {"report", report_to_json(pc.report)}});
  }
  return j;
}

void write_compare_csv(std::ostream& out, const CompareReport& report) {
  out << "policy,normalized_harvest,evictions_critical,evictions_best_effort\n";
  for (const auto& pc : report.policies) {
    out << pc.policy << ',' << format_double(pc.normalized_harvest) << ','
        << pc.report.evictions_critical << ',' << pc.report.evictions_best_effort << '\n';
  }
}

}  // namespace greencores
