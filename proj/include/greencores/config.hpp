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

#include <string_view>

#include "greencores/kv_document.hpp"
#include "greencores/sim_engine.hpp"

namespace greencores {

/// Builds a SimConfig from a flat key/value document on top of the desk-scale
/// defaults. Recognized keys:
///
///   servers, cores_per_server, renewables_cores,
///   p_act, p_slp, p_pin, u_rt, f_slope, f_offset, p_grid,
///   policy, tau_critical, tau_best_effort,
///   supply_step_s, seed, redeploy_evicted, eviction_latency_s, duration_s,
///   check_invariants
///
/// When p_grid is absent it is sized so that exactly
/// cores_per_server - renewables_cores cores are regular. Synthetic-workload
/// keys (see SynthSpec) may share the document. Any other key is rejected.
SimConfig sim_config_from_document(const KvDocument& doc);

/// Parses "a,b" into an ideal point (d_rnw, d_sq).
IdealPoint parse_ideal_point(std::string_view text);

}  // namespace greencores
