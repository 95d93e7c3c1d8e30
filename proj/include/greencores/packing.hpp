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

#include <span>
#include <string_view>
#include <vector>

#include "greencores/server_state.hpp"

namespace greencores {

/// Reference point in the (d_rnw, d_sq) feature space.
struct IdealPoint {
  double d_rnw = 0.0;
  double d_sq = 0.0;

  friend bool operator==(const IdealPoint&, const IdealPoint&) = default;
};

enum class Policy : std::uint8_t { proposed, best_fit, crit_aware };

std::string_view to_string(Policy p) noexcept;
Policy parse_policy(std::string_view text);

struct PolicyConfig {
  Policy policy = Policy::proposed;
  IdealPoint tau_critical{1.0, 0.5};
  IdealPoint tau_best_effort{0.2, 0.0};

  /// Throws ValidationError when an ideal point leaves the unit square.
  void validate() const;
};

struct Candidate {
  ServerId server_id = 0;
  GreenCoreInventory inventory;
};

struct ScoredServer {
  ServerId server_id = 0;
  double score = 0.0;

  friend bool operator==(const ScoredServer&, const ScoredServer&) = default;
};

/// Unharvested share of the awake green cores; 0 when none are awake.
double get_rnw(const GreenCoreInventory& inv);

/// Unused share of the regular cores; 0 for a server without regular cores.
double get_sq(const GreenCoreInventory& inv);

/// Euclidean distance scaled by 1/sqrt(2) so the unit square maps onto [0, 1].
double get_distance(double d_rnw, double d_sq, const IdealPoint& tau);

/// Ideal point used for a VM of the given class.
const IdealPoint& ideal_point_for(Criticality c, const PolicyConfig& cfg) noexcept;

/// Ranks candidates for `req`, most preferred first. Candidates must already
/// have at least req.core_count free awake cores. Ties fall to the smaller
/// server id.
std::vector<ScoredServer> get_placement_preferences(const VmRequest& req,
                                                    std::span<const Candidate> candidates,
                                                    const PolicyConfig& cfg);

}  // namespace greencores
