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

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "greencores/packing.hpp"
#include "greencores/server_state.hpp"
#include "greencores/trace_io.hpp"

namespace greencores {

struct SimConfig {
  int server_count = 50;
  CoreCount cores_per_server = 44;
  CoreCount renewables_core_count = 4;
  PowerParams power;
  PolicyConfig policy;
  Seconds supply_step = 900;
  std::uint64_t seed = 1;
  bool redeploy_evicted = false;
  /// Delay before an evicted VM reappears as an arrival (redeploy only).
  Seconds eviction_latency = 0;
  /// Simulated horizon; 0 derives it from the traces.
  Seconds duration = 0;
  /// Re-verify fleet invariants after every event; exits via
  /// InvariantViolation on the first breach.
  bool check_invariants = false;
  /// Keep the applied-event log in the report.
  bool record_event_log = false;

  [[nodiscard]] CoreCount regular_cores() const noexcept {
    return cores_per_server - renewables_core_count;
  }

  /// Throws ValidationError on bad sizes, invalid power constants, or a
  /// p_grid whose regular-core solve disagrees with renewables_core_count.
  void validate() const;

  /// 50 servers of 40 regular + 4 renewables-driven cores, prototype per-core
  /// constants, grid capacity sized for exactly 40 regular cores.
  static SimConfig desk_scale();
};

enum class EventKind : std::uint8_t { supply_change = 0, vm_departure = 1, vm_arrival = 2 };

/// Queue entry. Ordered by time, then kind (supply < departure < arrival),
/// then insertion sequence.
struct SimEvent {
  Seconds time = 0;
  EventKind kind = EventKind::supply_change;
  double capacity_fraction = 0.0;
  VmRequest vm;
  std::uint64_t placement = 0;  ///< departure: placement generation it belongs to
  std::uint64_t sequence = 0;
};

bool event_after(const SimEvent& a, const SimEvent& b) noexcept;

enum class LogKind : std::uint8_t { supply, placed, departed, evicted, failed };

struct LogEntry {
  Seconds time = 0;
  LogKind kind = LogKind::supply;
  VmId vm_id = 0;
  ServerId server_id = 0;
  CoreCount cores = 0;
  double capacity_fraction = 0.0;
};

struct TimeSeriesRow {
  Seconds time_s = 0;
  std::int64_t sum_cg_used = 0;
  std::int64_t sum_m = 0;
  std::int64_t sum_l = 0;
  double fleet_power_w = 0.0;
  double capacity_fraction = 0.0;
};

struct SimReport {
  std::string policy;
  std::uint64_t trace_hash = 0;
  Seconds horizon = 0;
  std::int64_t harvested_green_core_seconds = 0;
  double harvested_energy_joules = 0.0;
  std::int64_t evictions_critical = 0;
  std::int64_t evictions_best_effort = 0;
  std::int64_t total_arrivals = 0;
  std::int64_t redeployments = 0;
  std::int64_t placement_failures = 0;
  double eviction_rate = 0.0;
  std::vector<double> nlt_samples;
  std::vector<TimeSeriesRow> time_series;
  std::vector<LogEntry> event_log;

  [[nodiscard]] std::int64_t evictions_total() const noexcept {
    return evictions_critical + evictions_best_effort;
  }
};

struct MetricDelta {
  std::int64_t green_core_seconds = 0;
  double energy_joules = 0.0;
};

/// Integral of the piecewise-constant fleet state over [prev, now).
MetricDelta integrate_metrics(Seconds prev, Seconds now, std::span<const Server> fleet,
                              const PowerParams& params);

/// Same integral from precomputed fleet totals.
MetricDelta integrate_metrics(Seconds prev, Seconds now, std::int64_t sum_cg_used,
                              Watts sum_harvest_power);

/// Adds an eviction to the report; returns the normalized lifetime sample.
/// Throws InvariantViolation when `now` lies past the VM's scheduled end.
double record_eviction(SimReport& report, const VmRecord& vm, Seconds now);

/// One deterministic run over a fleet of identical servers.
class Simulator {
 public:
  Simulator(SimConfig cfg, VmTrace vms, SupplyTrace supply);

  SimReport run();

  [[nodiscard]] const std::vector<Server>& fleet() const noexcept { return fleet_; }
  [[nodiscard]] const SimConfig& config() const noexcept { return cfg_; }

 private:
  struct Live {
    ServerId server;
    std::uint64_t placement;
    CoreCount cores;
  };

  void push(SimEvent e);
  void handle_supply(const SimEvent& e);
  void handle_departure(const SimEvent& e);
  void handle_arrival(const SimEvent& e);
  void refresh_totals(ServerId id);
  void verify() const;
  void log(LogKind kind, Seconds t, VmId vm, ServerId server, CoreCount cores, double fraction);

  SimConfig cfg_;
  VmTrace vms_;
  SupplyTrace supply_;
  std::vector<Server> fleet_;
  std::vector<SimEvent> queue_;
  std::uint64_t next_sequence_ = 0;
  std::uint64_t next_placement_ = 0;
  std::map<VmId, Live> live_;
  SimReport report_;
  double capacity_fraction_ = 0.0;

  std::vector<CoreCount> cg_used_;
  std::vector<Watts> harvest_w_;
  std::int64_t sum_cg_used_ = 0;
  Watts sum_harvest_w_ = 0.0;
};

/// Runs one simulation; see Simulator.
SimReport run_simulation(const SimConfig& cfg, const VmTrace& vms, const SupplyTrace& supply);

}  // namespace greencores
