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
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "greencores/kv_document.hpp"
#include "greencores/server_state.hpp"

namespace greencores {

/// VM arrivals in nondecreasing arrival order with unique ids.
using VmTrace = std::vector<VmRequest>;

struct SupplySample {
  Seconds time = 0;
  double capacity_fraction = 0.0;

  friend bool operator==(const SupplySample&, const SupplySample&) = default;
};

struct RawSupplySample {
  Seconds time = 0;
  double value = 0.0;
};

/// Renewable capacity as a fraction of the per-server maximum, time ordered.
using SupplyTrace = std::vector<SupplySample>;

// vm_id,arrival_s,lifetime_s,cores,criticality
VmTrace parse_vm_trace(std::istream& in, const std::string& source = "<vm trace>");
VmTrace read_vm_trace(const std::filesystem::path& path);
void write_vm_trace(std::ostream& out, std::span<const VmRequest> trace);

/// Throws ValidationError on duplicate ids, unsorted arrivals, cores < 1 or
/// lifetime <= 0.
void validate_vm_trace(std::span<const VmRequest> trace);

/// Reads `time_s,value` (raw power, normalized here) or `time_s,fraction`.
SupplyTrace parse_supply_trace(std::istream& in, CoreCount n_green,
                               const std::string& source = "<supply trace>");
SupplyTrace read_supply_trace(const std::filesystem::path& path, CoreCount n_green);
void write_supply_trace(std::ostream& out, std::span<const SupplySample> trace);
void validate_supply_trace(std::span<const SupplySample> trace);

/// Scales raw renewable output so that its peak wakes all `n_green`
/// renewables-driven cores: fraction = value / max(value).
SupplyTrace normalize_supply(std::span<const RawSupplySample> raw, CoreCount n_green);

/// Parameters for the synthetic desk-scale workload.
struct SynthSpec {
  int servers = 50;
  Seconds duration_s = 24 * 3600;
  double arrivals_per_hour = 2000.0 / 24.0;
  double lifetime_median_s = 3600.0;
  double lifetime_sigma = 1.2;
  /// Core counts drawn from core_values with P(k-th) proportional to
  /// (1 - core_geometric_p)^k.
  std::vector<CoreCount> core_values{1, 2, 4, 8};
  double core_geometric_p = 0.5;
  double best_effort_share = 0.3;
  /// Diurnal solar: max(0, sin) with zero crossings at sunrise and sunset.
  double sunrise_hour = 6.0;
  double sunset_hour = 18.0;
  Seconds supply_step_s = 900;

  void validate() const;
  static SynthSpec from_document(const KvDocument& doc);
};

struct SyntheticTraces {
  VmTrace vms;
  SupplyTrace supply;
};

/// Poisson arrivals, log-normal lifetimes and a diurnal solar curve;
/// reproducible for a given seed.
SyntheticTraces synth_traces(const SynthSpec& spec, std::uint64_t seed);

/// Solar shape used by synth_traces at time t.
double diurnal_fraction(const SynthSpec& spec, Seconds t);

/// FNV-1a over the canonical CSV form of both traces.
std::uint64_t trace_hash(std::span<const VmRequest> vms, std::span<const SupplySample> supply);

}  // namespace greencores
