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

#include "greencores/sim_engine.hpp"

#include <algorithm>
#include <string>

namespace greencores {

void SimConfig::validate() const {
  if (server_count < 1) {
    throw ValidationError("server_count must be >= 1");
  }
  if (supply_step <= 0) {
    throw ValidationError("supply_step must be positive");
  }
  if (cores_per_server < 1 || renewables_core_count < 0 ||
      renewables_core_count > cores_per_server) {
    throw ValidationError("need cores_per_server >= 1 and 0 <= renewables_core_count <= cores");
  }
  if (eviction_latency < 0 || duration < 0) {
    throw ValidationError("eviction_latency and duration must be nonnegative");
  }
  power.validate(cores_per_server);
  policy.validate();
  const CoreCount solved = solve_regular_core_count(cores_per_server, power);
  if (solved != regular_cores()) {
    throw ValidationError("p_grid admits " + std::to_string(solved) +
                          " regular cores but the configuration expects " +
                          std::to_string(regular_cores()));
  }
}

SimConfig SimConfig::desk_scale() {
  SimConfig cfg;
  cfg.power = prototype_calibration();
  cfg.power.p_grid =
      grid_capacity_for(cfg.regular_cores(), cfg.cores_per_server, cfg.power);
  return cfg;
}

bool event_after(const SimEvent& a, const SimEvent& b) noexcept {
  if (a.time != b.time) {
    return a.time > b.time;
  }
  if (a.kind != b.kind) {
    return a.kind > b.kind;
  }
  return a.sequence > b.sequence;
}

MetricDelta integrate_metrics(Seconds prev, Seconds now, std::int64_t sum_cg_used,
                              Watts sum_harvest_power) {
  if (now < prev) {
    throw ValidationError("metric integration interval runs backwards");
  }
  const Seconds dt = now - prev;
  return {sum_cg_used * dt, sum_harvest_power * static_cast<double>(dt)};
}

MetricDelta integrate_metrics(Seconds prev, Seconds now, std::span<const Server> fleet,
                              const PowerParams& params) {
  std::int64_t cg = 0;
  Watts harvest = 0.0;
  for (const auto& s : fleet) {
    cg += s.inventory().c_g_used;
    harvest += s.harvest_power(params);
  }
  return integrate_metrics(prev, now, cg, harvest);
}

double record_eviction(SimReport& report, const VmRecord& vm, Seconds now) {
  const auto& req = vm.request;
  if (now > req.arrival_time + req.lifetime) {
    throw InvariantViolation("VM " + std::to_string(req.vm_id) +
                             " evicted after its scheduled departure");
  }
  const double nlt = elapsed_lifetime_fraction(req, now);
  report.nlt_samples.push_back(nlt);
  if (req.criticality == Criticality::critical) {
    ++report.evictions_critical;
  } else {
    ++report.evictions_best_effort;
  }
  return nlt;
}

Simulator::Simulator(SimConfig cfg, VmTrace vms, SupplyTrace supply)
    : cfg_(std::move(cfg)), vms_(std::move(vms)), supply_(std::move(supply)) {
  cfg_.validate();
  validate_vm_trace(vms_);
  validate_supply_trace(supply_);
  fleet_.reserve(static_cast<std::size_t>(cfg_.server_count));
  for (int i = 0; i < cfg_.server_count; ++i) {
    fleet_.emplace_back(static_cast<ServerId>(i), cfg_.cores_per_server, cfg_.regular_cores());
  }
  cg_used_.assign(fleet_.size(), 0);
  harvest_w_.assign(fleet_.size(), 0.0);
  for (std::size_t i = 0; i < fleet_.size(); ++i) {
    refresh_totals(static_cast<ServerId>(i));
  }
}

void Simulator::push(SimEvent e) {
  e.sequence = next_sequence_++;
  queue_.push_back(std::move(e));
  std::push_heap(queue_.begin(), queue_.end(), event_after);
}

void Simulator::refresh_totals(ServerId id) {
  const Server& s = fleet_[id];
  const CoreCount cg = s.inventory().c_g_used;
  const Watts h = s.harvest_power(cfg_.power);
  sum_cg_used_ += cg - cg_used_[id];
  sum_harvest_w_ += h - harvest_w_[id];
  cg_used_[id] = cg;
  harvest_w_[id] = h;
}

void Simulator::log(LogKind kind, Seconds t, VmId vm, ServerId server, CoreCount cores,
                    double fraction) {
  if (cfg_.record_event_log) {
    report_.event_log.push_back({t, kind, vm, server, cores, fraction});
  }
}

void Simulator::handle_supply(const SimEvent& e) {
  capacity_fraction_ = e.capacity_fraction;
  log(LogKind::supply, e.time, 0, 0, 0, e.capacity_fraction);
  for (auto& server : fleet_) {
    EvictionReport ev = server.apply_supply_signal(e.capacity_fraction, e.time);
    for (const auto& rec : ev.records) {
      record_eviction(report_, rec, e.time);
      live_.erase(rec.request.vm_id);
      log(LogKind::evicted, e.time, rec.request.vm_id, server.id(), rec.request.core_count, 0.0);
      if (cfg_.redeploy_evicted) {
        const Seconds end = rec.request.arrival_time + rec.request.lifetime;
        const Seconds remaining = end - e.time;
        if (remaining > 0) {
          SimEvent again;
          again.time = e.time + cfg_.eviction_latency;
          again.kind = EventKind::vm_arrival;
          again.vm = rec.request;
          again.vm.arrival_time = again.time;
          again.vm.lifetime = remaining;
          ++report_.redeployments;
          push(std::move(again));
        }
      }
    }
    refresh_totals(server.id());
  }
}

void Simulator::handle_departure(const SimEvent& e) {
  auto it = live_.find(e.vm.vm_id);
  if (it == live_.end() || it->second.placement != e.placement) {
    return;  // evicted earlier
  }
  const ServerId sid = it->second.server;
  const CoreCount freed = fleet_[sid].release_vm(e.vm.vm_id, e.time);
  live_.erase(it);
  log(LogKind::departed, e.time, e.vm.vm_id, sid, freed, 0.0);
  refresh_totals(sid);
}

void Simulator::handle_arrival(const SimEvent& e) {
  const VmRequest& req = e.vm;
  std::vector<Candidate> candidates;
  for (const auto& s : fleet_) {
    if (s.free_awake() >= req.core_count) {
      candidates.push_back({s.id(), s.inventory()});
    }
  }
  const auto ranked = get_placement_preferences(req, candidates, cfg_.policy);
  if (ranked.empty()) {
    ++report_.placement_failures;
    log(LogKind::failed, e.time, req.vm_id, 0, req.core_count, 0.0);
    return;
  }
  const ServerId sid = ranked.front().server_id;
  fleet_[sid].place_vm(req, e.time);
  const std::uint64_t placement = next_placement_++;
  live_[req.vm_id] = Live{sid, placement, req.core_count};
  log(LogKind::placed, e.time, req.vm_id, sid, req.core_count, 0.0);
  refresh_totals(sid);

  SimEvent leave;
  leave.time = req.arrival_time + req.lifetime;
  leave.kind = EventKind::vm_departure;
  leave.vm = req;
  leave.placement = placement;
  push(std::move(leave));
}

void Simulator::verify() const {
  std::int64_t placed = 0;
  for (const auto& s : fleet_) {
    s.check_invariants();
    placed += s.pinned_total();
  }
  std::int64_t expected = 0;
  for (const auto& [id, live] : live_) {
    if (!fleet_[live.server].hosts(id)) {
      throw InvariantViolation("VM " + std::to_string(id) + " missing from its server");
    }
    expected += live.cores;
  }
  if (placed != expected) {
    throw InvariantViolation("placed cores " + std::to_string(placed) +
                             " differ from live VM cores " + std::to_string(expected));
  }
}

SimReport Simulator::run() {
  report_ = SimReport{};
  report_.policy = std::string(to_string(cfg_.policy.policy));
  report_.trace_hash = trace_hash(vms_, supply_);
  report_.total_arrivals = static_cast<std::int64_t>(vms_.size());

  Seconds horizon = cfg_.duration;
  if (horizon == 0) {
    if (!vms_.empty()) {
      horizon = vms_.back().arrival_time;
    }
    if (!supply_.empty()) {
      horizon = std::max(horizon, supply_.back().time + cfg_.supply_step);
    }
  }
  report_.horizon = horizon;

  // Held supply value at each step boundary; zero before the first sample.
  std::size_t next_sample = 0;
  double held = 0.0;
  for (Seconds t = 0; t < horizon; t += cfg_.supply_step) {
    while (next_sample < supply_.size() && supply_[next_sample].time <= t) {
      held = supply_[next_sample].capacity_fraction;
      ++next_sample;
    }
    SimEvent e;
    e.time = t;
    e.kind = EventKind::supply_change;
    e.capacity_fraction = held;
    push(std::move(e));
  }
  for (const auto& req : vms_) {
    if (req.arrival_time >= horizon) {
      break;
    }
    SimEvent e;
    e.time = req.arrival_time;
    e.kind = EventKind::vm_arrival;
    e.vm = req;
    push(std::move(e));
  }

  Seconds clock = 0;
  while (!queue_.empty()) {
    std::pop_heap(queue_.begin(), queue_.end(), event_after);
    SimEvent e = std::move(queue_.back());
    queue_.pop_back();
    if (e.time >= horizon) {
      continue;
    }
    const MetricDelta d = integrate_metrics(clock, e.time, sum_cg_used_, sum_harvest_w_);
    report_.harvested_green_core_seconds += d.green_core_seconds;
    report_.harvested_energy_joules += d.energy_joules;
    clock = e.time;

    switch (e.kind) {
      case EventKind::supply_change:
        handle_supply(e);
        break;
      case EventKind::vm_departure:
        handle_departure(e);
        break;
      case EventKind::vm_arrival:
        handle_arrival(e);
        break;
    }
    if (cfg_.check_invariants) {
      verify();
    }

    // Sample the fleet once every event at a step boundary has been applied.
    const bool boundary = e.time % cfg_.supply_step == 0;
    const bool last_at_time = queue_.empty() || queue_.front().time != e.time;
    if (boundary && last_at_time) {
      TimeSeriesRow row;
      row.time_s = e.time;
      row.capacity_fraction = capacity_fraction_;
      for (const auto& s : fleet_) {
        row.sum_cg_used += s.inventory().c_g_used;
        row.sum_m += s.pinned_total();
        row.sum_l += s.sleeping_cores();
        row.fleet_power_w += s.power(cfg_.power);
      }
      report_.time_series.push_back(row);
    }
  }
  const MetricDelta tail = integrate_metrics(clock, std::max(clock, horizon), sum_cg_used_,
                                             sum_harvest_w_);
  report_.harvested_green_core_seconds += tail.green_core_seconds;
  report_.harvested_energy_joules += tail.energy_joules;

  report_.eviction_rate =
      report_.total_arrivals > 0
          ? static_cast<double>(report_.evictions_total()) /
                static_cast<double>(report_.total_arrivals)
          : 0.0;
  return std::move(report_);
}

SimReport run_simulation(const SimConfig& cfg, const VmTrace& vms, const SupplyTrace& supply) {
  Simulator sim(cfg, vms, supply);
  return sim.run();
}

}  // namespace greencores
