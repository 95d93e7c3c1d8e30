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

#include <map>
#include <span>
#include <vector>

#include "greencores/power_model.hpp"
#include "greencores/types.hpp"

namespace greencores {

struct VmRequest {
  VmId vm_id = 0;
  CoreCount core_count = 1;
  Criticality criticality = Criticality::critical;
  Seconds arrival_time = 0;
  Seconds lifetime = 1;

  friend bool operator==(const VmRequest&, const VmRequest&) = default;
};

/// Live placement. The regular/green split is fixed at placement.
struct VmRecord {
  VmRequest request;
  ServerId server_id = 0;
  CoreCount pinned_green_cores = 0;
  CoreCount pinned_regular_cores = 0;
  Seconds placed_at = 0;
};

/// Green Cores view of one server.
struct GreenCoreInventory {
  CoreCount c_g_active = 0;
  CoreCount c_g_used = 0;
  CoreCount c_r_active = 0;
  CoreCount c_r_used = 0;

  /// Awake cores not pinned to any VM.
  [[nodiscard]] CoreCount free_awake() const noexcept {
    return (c_r_active + c_g_active) - (c_r_used + c_g_used);
  }

  friend bool operator==(const GreenCoreInventory&, const GreenCoreInventory&) = default;
};

struct EvictedVm {
  VmId vm_id = 0;
  Criticality criticality = Criticality::critical;
  double elapsed_lifetime_fraction = 0.0;
};

struct EvictionReport {
  std::vector<EvictedVm> evicted;
  CoreCount cores_freed = 0;
  Seconds trigger_time = 0;
  /// Records of the evicted VMs as they were at eviction, for redeployment
  /// and metrics.
  std::vector<VmRecord> records;
};

/// Chooses the fewest VMs to evict so that at least `green_pin_excess` green
/// cores are unpinned. Best-effort VMs are exhausted before any critical VM is
/// touched; within a class, larger green pinnings go first and ties fall to
/// the smaller vm_id. Returned ids are in eviction order.
std::vector<VmId> select_evictions(std::span<const VmRecord> vms, CoreCount green_pin_excess);

/// One server under the static-allocation execution model. Cores are
/// fungible within their class, so only counts are tracked.
class Server {
 public:
  Server(ServerId id, CoreCount total_cores, CoreCount regular_cores);

  [[nodiscard]] ServerId id() const noexcept { return id_; }
  [[nodiscard]] CoreCount total_cores() const noexcept { return n_; }
  [[nodiscard]] CoreCount regular_cores() const noexcept { return r_; }
  [[nodiscard]] CoreCount renewable_cores() const noexcept { return n_ - r_; }
  [[nodiscard]] CoreCount awake_green() const noexcept { return awake_green_; }
  [[nodiscard]] CoreCount sleeping_cores() const noexcept { return (n_ - r_) - awake_green_; }
  [[nodiscard]] CoreCount pinned_total() const noexcept { return pinned_regular_ + pinned_green_; }
  [[nodiscard]] CoreCount pinned_regular() const noexcept { return pinned_regular_; }
  [[nodiscard]] CoreCount pinned_green() const noexcept { return pinned_green_; }
  [[nodiscard]] CoreCount free_awake() const noexcept {
    return (r_ + awake_green_) - pinned_total();
  }
  [[nodiscard]] const std::map<VmId, VmRecord>& vms() const noexcept { return vms_; }
  [[nodiscard]] bool hosts(VmId id) const { return vms_.contains(id); }

  [[nodiscard]] GreenCoreInventory inventory() const noexcept;

  /// Pins the request onto free regular cores first, then awake green cores.
  /// Throws CapacityError when fewer than core_count awake cores are free.
  const VmRecord& place_vm(const VmRequest& req, Seconds now);

  /// Removes a departed VM; returns the cores it held. Power profiles are
  /// left alone. Throws ValidationError for an unknown id.
  CoreCount release_vm(VmId id, Seconds now);

  /// Sets the awake renewables-driven core count to floor(fraction * (n - r)),
  /// evicting first when pinned green cores would exceed the new target.
  EvictionReport apply_supply_signal(double capacity_fraction, Seconds now);

  /// Recomputes every counter from the VM records and checks the structural
  /// invariants. Throws InvariantViolation on mismatch.
  void check_invariants() const;

  [[nodiscard]] Watts power(const PowerParams& params) const;
  [[nodiscard]] Watts harvest_power(const PowerParams& params) const;

 private:
  ServerId id_;
  CoreCount n_;
  CoreCount r_;
  CoreCount awake_green_ = 0;
  CoreCount pinned_regular_ = 0;
  CoreCount pinned_green_ = 0;
  std::map<VmId, VmRecord> vms_;
};

/// Elapsed share of a VM's intended lifetime at `now`, clamped to [0, 1].
double elapsed_lifetime_fraction(const VmRequest& req, Seconds now);

}  // namespace greencores
