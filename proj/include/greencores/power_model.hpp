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

#include "greencores/types.hpp"

namespace greencores {

using Watts = double;

/// Per-core power constants plus the affine CPU-to-server mapping
/// f(x) = f_slope * x + f_offset.
struct PowerParams {
  Watts p_act = 1.0;  ///< idle awake core
  Watts p_slp = 0.0;  ///< deep-sleep core
  Watts p_pin = 1.0;  ///< pinned core at the representative utilization
  double u_rt = 1.0;  ///< representative utilization behind p_pin (informational)
  double f_slope = 1.0;
  Watts f_offset = 0.0;
  Watts p_grid = 0.0;  ///< dedicated grid capacity per server

  /// Maps summed CPU core power to server power.
  [[nodiscard]] Watts to_server(Watts cpu) const noexcept { return f_slope * cpu + f_offset; }

  /// Throws ValidationError unless p_slp <= p_act <= p_pin, f_slope > 0,
  /// u_rt in [0,1] and the grid can carry an all-asleep server of n cores.
  void validate(CoreCount n) const;
};

/// Server power with m pinned cores, l sleeping cores and the rest awake idle.
Watts server_power(CoreCount m, CoreCount l, CoreCount n, const PowerParams& params);

/// Largest R in [0, n] whose all-pinned-regular, all-asleep-green state stays
/// within p_grid.
CoreCount solve_regular_core_count(CoreCount n, const PowerParams& params);

/// Grid capacity that makes exactly r cores regular on an n-core server.
Watts grid_capacity_for(CoreCount r, CoreCount n, const PowerParams& params);

/// Power drawn by awake but unpinned renewables-driven cores.
Watts leakage_power(CoreCount l, CoreCount n, CoreCount r, const PowerParams& params);

/// Draw above the grid capacity, i.e. renewable power being harvested. Zero
/// when the server sits at or below p_grid.
Watts instantaneous_harvest_power(CoreCount m, CoreCount l, CoreCount n, CoreCount r,
                                  const PowerParams& params);

/// Constants fitted to the 12-core prototype: 75.79 W with every core pinned
/// and 59 W once six cores are unpinned and asleep. p_grid is set so that
/// r = 6 on that server.
PowerParams prototype_calibration();

}  // namespace greencores
