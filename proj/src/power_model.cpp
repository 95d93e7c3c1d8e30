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

#include "greencores/power_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace greencores {

namespace {

void check_counts(CoreCount m, CoreCount l, CoreCount n) {
  if (n < 0 || m < 0 || l < 0) {
    throw ValidationError("core counts must be non-negative");
  }
  if (m + l > n) {
    throw ValidationError("pinned (" + std::to_string(m) + ") plus sleeping (" +
                          std::to_string(l) + ") cores exceed total " + std::to_string(n));
  }
}

}  // namespace

void PowerParams::validate(CoreCount n) const {
  if (!(p_slp <= p_act && p_act <= p_pin)) {
    throw ValidationError("power constants must satisfy p_slp <= p_act <= p_pin");
  }
  if (!(p_slp >= 0.0)) {
    throw ValidationError("p_slp must be non-negative");
  }
  if (!(f_slope > 0.0)) {
    throw ValidationError("f_slope must be positive");
  }
  if (!(u_rt >= 0.0 && u_rt <= 1.0)) {
    throw ValidationError("u_rt must lie in [0, 1]");
  }
  if (n < 0) {
    throw ValidationError("core count must be non-negative");
  }
  if (to_server(n * p_slp) > p_grid) {
    throw ValidationError("p_grid cannot sustain an all-asleep server of " + std::to_string(n) +
                          " cores");
  }
}

Watts server_power(CoreCount m, CoreCount l, CoreCount n, const PowerParams& params) {
  check_counts(m, l, n);
  const CoreCount awake_idle = n - m - l;
  return params.to_server(m * params.p_pin + l * params.p_slp + awake_idle * params.p_act);
}

Watts grid_capacity_for(CoreCount r, CoreCount n, const PowerParams& params) {
  check_counts(r, n - r, n);
  return params.to_server(r * params.p_pin + (n - r) * params.p_slp);
}

CoreCount solve_regular_core_count(CoreCount n, const PowerParams& params) {
  params.validate(n);
  // Feasibility is monotone in R (p_pin >= p_slp, f increasing); scan from the top.
  for (CoreCount r = n; r > 0; --r) {
    if (grid_capacity_for(r, n, params) <= params.p_grid) {
      return r;
    }
  }
  return 0;
}

Watts leakage_power(CoreCount l, CoreCount n, CoreCount r, const PowerParams& params) {
  if (r < 0 || r > n) {
    throw ValidationError("regular core count out of range");
  }
  if (l < 0 || l > n - r) {
    throw ValidationError("sleeping cores must lie within the renewables-driven subset");
  }
  return (params.p_act - params.p_slp) * ((n - r) - l);
}

Watts instantaneous_harvest_power(CoreCount m, CoreCount l, CoreCount n, CoreCount r,
                                  const PowerParams& params) {
  if (r < 0 || r > n || l > n - r) {
    throw ValidationError("sleeping cores must lie within the renewables-driven subset");
  }
  const Watts above_grid = server_power(m, l, n, params) - params.p_grid;
  return std::max(0.0, above_grid);
}

PowerParams prototype_calibration() {
  constexpr CoreCount kCores = 12;
  constexpr CoreCount kRenewables = 6;
  constexpr Watts kPeak = 75.79;
  constexpr Watts kMatched = 59.0;

  PowerParams p;
  p.u_rt = 1.0;
  p.p_slp = 0.25;
  p.p_act = 1.2;
  // Unpinning and sleeping six cores must account for the whole drop.
  p.p_pin = p.p_slp + (kPeak - kMatched) / kRenewables;
  p.f_slope = 1.0;
  p.f_offset = kPeak - kCores * p.p_pin;
  p.p_grid = grid_capacity_for(kCores - kRenewables, kCores, p);
  return p;
}

}  // namespace greencores
