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

#include "greencores/server_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace greencores {

std::vector<VmId> select_evictions(std::span<const VmRecord> vms, CoreCount green_pin_excess) {
  std::vector<const VmRecord*> order;
  order.reserve(vms.size());
  for (const auto& vm : vms) {
    if (vm.pinned_green_cores > 0) {
      order.push_back(&vm);
    }
  }
  // Best-effort class first, then largest green pinning, then smallest id.
  std::sort(order.begin(), order.end(), [](const VmRecord* a, const VmRecord* b) {
    const bool a_be = a->request.criticality == Criticality::best_effort;
    const bool b_be = b->request.criticality == Criticality::best_effort;
    if (a_be != b_be) {
      return a_be;
    }
    if (a->pinned_green_cores != b->pinned_green_cores) {
      return a->pinned_green_cores > b->pinned_green_cores;
    }
    return a->request.vm_id < b->request.vm_id;
  });

  CoreCount best_effort_green = 0;
  std::size_t best_effort_count = 0;
  for (const auto* vm : order) {
    if (vm->request.criticality == Criticality::best_effort) {
      best_effort_green += vm->pinned_green_cores;
      ++best_effort_count;
    }
  }

  std::vector<VmId> chosen;
  if (green_pin_excess <= 0) {
    return chosen;
  }

  // Fewest critical VMs that close the gap left after every best-effort VM,
  // largest first so the remaining best-effort need is smallest.
  CoreCount critical_freed = 0;
  std::size_t critical_taken = 0;
  for (std::size_t i = best_effort_count;
       i < order.size() && best_effort_green + critical_freed < green_pin_excess; ++i) {
    critical_freed += order[i]->pinned_green_cores;
    ++critical_taken;
  }

  CoreCount remaining = green_pin_excess - critical_freed;
  for (std::size_t i = 0; i < best_effort_count && remaining > 0; ++i) {
    chosen.push_back(order[i]->request.vm_id);
    remaining -= order[i]->pinned_green_cores;
  }
  for (std::size_t i = 0; i < critical_taken; ++i) {
    chosen.push_back(order[best_effort_count + i]->request.vm_id);
  }
  return chosen;
}

double elapsed_lifetime_fraction(const VmRequest& req, Seconds now) {
  const double frac =
      static_cast<double>(now - req.arrival_time) / static_cast<double>(req.lifetime);
  return std::clamp(frac, 0.0, 1.0);
}

Server::Server(ServerId id, CoreCount total_cores, CoreCount regular_cores)
    : id_(id), n_(total_cores), r_(regular_cores) {
  if (total_cores < 1 || regular_cores < 0 || regular_cores > total_cores) {
    throw ValidationError("server needs n >= 1 and 0 <= r <= n");
  }
}

GreenCoreInventory Server::inventory() const noexcept {
  const CoreCount m = pinned_total();
  return GreenCoreInventory{
      .c_g_active = awake_green_,
      .c_g_used = std::max(0, m - r_),
      .c_r_active = r_,
      .c_r_used = std::min(m, r_),
  };
}

const VmRecord& Server::place_vm(const VmRequest& req, Seconds now) {
  if (req.core_count < 1) {
    throw ValidationError("VM needs at least one core");
  }
  if (vms_.contains(req.vm_id)) {
    throw ValidationError("VM " + std::to_string(req.vm_id) + " already placed on server " +
                          std::to_string(id_));
  }
  if (free_awake() < req.core_count) {
    throw CapacityError("server " + std::to_string(id_) + " has " + std::to_string(free_awake()) +
                        " free awake cores, VM " + std::to_string(req.vm_id) + " needs " +
                        std::to_string(req.core_count));
  }
  const CoreCount regular = std::min(req.core_count, r_ - pinned_regular_);
  const CoreCount green = req.core_count - regular;

  VmRecord rec{
      .request = req,
      .server_id = id_,
      .pinned_green_cores = green,
      .pinned_regular_cores = regular,
      .placed_at = now,
  };
  pinned_regular_ += regular;
  pinned_green_ += green;
  return vms_.emplace(req.vm_id, rec).first->second;
}

CoreCount Server::release_vm(VmId id, Seconds /*now*/) {
  auto it = vms_.find(id);
  if (it == vms_.end()) {
    throw ValidationError("VM " + std::to_string(id) + " is not placed on server " +
                          std::to_string(id_));
  }
  pinned_regular_ -= it->second.pinned_regular_cores;
  pinned_green_ -= it->second.pinned_green_cores;
  const CoreCount freed = it->second.request.core_count;
  vms_.erase(it);
  return freed;
}

EvictionReport Server::apply_supply_signal(double capacity_fraction, Seconds now) {
  if (!(capacity_fraction >= 0.0 && capacity_fraction <= 1.0)) {
    throw ValidationError("capacity fraction must lie in [0, 1]");
  }
  EvictionReport report;
  report.trigger_time = now;

  const auto target =
      static_cast<CoreCount>(std::floor(capacity_fraction * static_cast<double>(n_ - r_)));

  if (target < pinned_green_) {
    std::vector<VmRecord> live;
    live.reserve(vms_.size());
    for (const auto& [id, rec] : vms_) {
      live.push_back(rec);
    }
    for (VmId id : select_evictions(live, pinned_green_ - target)) {
      const VmRecord rec = vms_.at(id);
      report.evicted.push_back(EvictedVm{
          .vm_id = id,
          .criticality = rec.request.criticality,
          .elapsed_lifetime_fraction = elapsed_lifetime_fraction(rec.request, now),
      });
      report.cores_freed += release_vm(id, now);
      report.records.push_back(rec);
    }
  }
  // Profiles only change once evictions have completed.
  awake_green_ = target;
  return report;
}

void Server::check_invariants() const {
  CoreCount regular = 0;
  CoreCount green = 0;
  for (const auto& [id, rec] : vms_) {
    if (rec.pinned_regular_cores + rec.pinned_green_cores != rec.request.core_count ||
        rec.pinned_regular_cores < 0 || rec.pinned_green_cores < 0) {
      throw InvariantViolation("VM " + std::to_string(id) + " pinning does not match its cores");
    }
    if (rec.server_id != id_ || rec.request.vm_id != id) {
      throw InvariantViolation("VM record " + std::to_string(id) + " misfiled");
    }
    regular += rec.pinned_regular_cores;
    green += rec.pinned_green_cores;
  }
  if (regular != pinned_regular_ || green != pinned_green_) {
    throw InvariantViolation("server " + std::to_string(id_) + " pinned counters out of sync");
  }
  if (pinned_regular_ > r_) {
    throw InvariantViolation("server " + std::to_string(id_) + " over-pins regular cores");
  }
  if (pinned_green_ > awake_green_) {
    throw InvariantViolation("server " + std::to_string(id_) + " pins sleeping green cores");
  }
  if (awake_green_ < 0 || awake_green_ > n_ - r_) {
    throw InvariantViolation("server " + std::to_string(id_) + " awake count out of range");
  }
}

Watts Server::power(const PowerParams& params) const {
  return server_power(pinned_total(), sleeping_cores(), n_, params);
}

Watts Server::harvest_power(const PowerParams& params) const {
  return instantaneous_harvest_power(pinned_total(), sleeping_cores(), n_, r_, params);
}

}  // namespace greencores
