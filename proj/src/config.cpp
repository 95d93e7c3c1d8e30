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

#include "greencores/config.hpp"

#include <set>
#include <string>

namespace greencores {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      // simulation
      "servers", "cores_per_server", "renewables_cores", "p_act", "p_slp", "p_pin", "u_rt",
      "f_slope", "f_offset", "p_grid", "policy", "tau_critical", "tau_best_effort",
      "supply_step_s", "seed", "redeploy_evicted", "eviction_latency_s", "duration_s",
      "check_invariants",
      // synthetic workload
      "arrivals_per_hour", "lifetime_median_s", "lifetime_sigma", "core_values",
      "core_geometric_p", "best_effort_share", "sunrise_hour", "sunset_hour"};
  return keys;
}

}  // namespace

IdealPoint parse_ideal_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ValidationError("ideal point must be written as d_rnw,d_sq: " + std::string(text));
  }
  const auto a = parse_double(text.substr(0, comma));
  const auto b = parse_double(text.substr(comma + 1));
  if (!a || !b) {
    throw ValidationError("ideal point must be written as d_rnw,d_sq: " + std::string(text));
  }
  IdealPoint p{*a, *b};
  if (p.d_rnw < 0.0 || p.d_rnw > 1.0 || p.d_sq < 0.0 || p.d_sq > 1.0) {
    throw ValidationError("ideal point outside [0,1] x [0,1]: " + std::string(text));
  }
  return p;
}

SimConfig sim_config_from_document(const KvDocument& doc) {
  for (const auto& [key, value] : doc.values()) {
    if (!known_keys().contains(key)) {
      throw ValidationError("unknown configuration key '" + key + "'");
    }
  }

  SimConfig cfg = SimConfig::desk_scale();
  cfg.server_count = static_cast<int>(doc.get_int("servers", cfg.server_count));
  cfg.cores_per_server =
      static_cast<CoreCount>(doc.get_int("cores_per_server", cfg.cores_per_server));
  cfg.renewables_core_count =
      static_cast<CoreCount>(doc.get_int("renewables_cores", cfg.renewables_core_count));

  PowerParams& p = cfg.power;
  p.p_act = doc.get_double("p_act", p.p_act);
  p.p_slp = doc.get_double("p_slp", p.p_slp);
  p.p_pin = doc.get_double("p_pin", p.p_pin);
  p.u_rt = doc.get_double("u_rt", p.u_rt);
  p.f_slope = doc.get_double("f_slope", p.f_slope);
  p.f_offset = doc.get_double("f_offset", p.f_offset);
  if (doc.contains("p_grid")) {
    p.p_grid = doc.get_double("p_grid", p.p_grid);
  } else {
    if (cfg.renewables_core_count < 0 || cfg.renewables_core_count > cfg.cores_per_server) {
      throw ValidationError("renewables_cores must lie in [0, cores_per_server]");
    }
    p.p_grid = grid_capacity_for(cfg.regular_cores(), cfg.cores_per_server, p);
  }

  cfg.policy.policy = parse_policy(doc.get_string("policy", std::string(to_string(cfg.policy.policy))));
  if (const auto v = doc.get("tau_critical")) {
    cfg.policy.tau_critical = parse_ideal_point(*v);
  }
  if (const auto v = doc.get("tau_best_effort")) {
    cfg.policy.tau_best_effort = parse_ideal_point(*v);
  }
  cfg.supply_step = doc.get_int("supply_step_s", cfg.supply_step);
  const long long seed = doc.get_int("seed", static_cast<long long>(cfg.seed));
  if (seed < 0) {
    throw ValidationError("seed must be nonnegative");
  }
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.redeploy_evicted = doc.get_bool("redeploy_evicted", cfg.redeploy_evicted);
  cfg.eviction_latency = doc.get_int("eviction_latency_s", cfg.eviction_latency);
  cfg.duration = doc.get_int("duration_s", cfg.duration);
  cfg.check_invariants = doc.get_bool("check_invariants", cfg.check_invariants);
  cfg.validate();
  return cfg;
}

}  // namespace greencores
