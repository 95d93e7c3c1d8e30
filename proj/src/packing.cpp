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

#include "greencores/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace greencores {

std::string_view to_string(Policy p) noexcept {
  switch (p) {
    case Policy::proposed:
      return "proposed";
    case Policy::best_fit:
      return "best-fit";
    case Policy::crit_aware:
      return "crit-aware";
  }
  return "unknown";
}

Policy parse_policy(std::string_view text) {
  if (text == "proposed") {
    return Policy::proposed;
  }
  if (text == "best-fit") {
    return Policy::best_fit;
  }
  if (text == "crit-aware") {
    return Policy::crit_aware;
  }
  throw ValidationError("unknown policy '" + std::string(text) +
                        "' (expected proposed, best-fit or crit-aware)");
}

namespace {

bool in_unit_square(const IdealPoint& p) {
  return p.d_rnw >= 0.0 && p.d_rnw <= 1.0 && p.d_sq >= 0.0 && p.d_sq <= 1.0;
}

double used_share_gap(CoreCount active, CoreCount used) {
  if (active == 0) {
    return 0.0;
  }
  return std::abs(static_cast<double>(active - used)) / static_cast<double>(active);
}

void sort_by_score(std::vector<ScoredServer>& out) {
  std::sort(out.begin(), out.end(), [](const ScoredServer& a, const ScoredServer& b) {
    if (a.score != b.score) {
      return a.score > b.score;
    }
    return a.server_id < b.server_id;
  });
}

struct FitEntry {
  ServerId server_id;
  CoreCount leftover;
  CoreCount capacity;
};

// Tightest fit first; score is the post-placement occupied share.
std::vector<ScoredServer> rank_best_fit(std::vector<FitEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const FitEntry& a, const FitEntry& b) {
    if (a.leftover != b.leftover) {
      return a.leftover < b.leftover;
    }
    return a.server_id < b.server_id;
  });
  std::vector<ScoredServer> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    const double score =
        e.capacity > 0 ? 1.0 - static_cast<double>(e.leftover) / static_cast<double>(e.capacity)
                       : 0.0;
    out.push_back({e.server_id, std::clamp(score, 0.0, 1.0)});
  }
  return out;
}

std::vector<ScoredServer> best_fit(const VmRequest& req, std::span<const Candidate> candidates) {
  std::vector<FitEntry> entries;
  entries.reserve(candidates.size());
  for (const auto& c : candidates) {
    entries.push_back({c.server_id, c.inventory.free_awake() - req.core_count,
                       c.inventory.c_r_active + c.inventory.c_g_active});
  }
  return rank_best_fit(std::move(entries));
}

std::vector<ScoredServer> crit_aware(const VmRequest& req, std::span<const Candidate> candidates) {
  if (req.criticality == Criticality::best_effort) {
    return best_fit(req, candidates);
  }
  // Critical VMs are balanced across servers that can take them on regular
  // cores alone: most regular room left first.
  std::vector<ScoredServer> spread;
  std::vector<Candidate> others;
  for (const auto& c : candidates) {
    const CoreCount m = c.inventory.c_r_used + c.inventory.c_g_used;
    const CoreCount regular_left = c.inventory.c_r_active - (m + req.core_count);
    if (regular_left >= 0) {
      spread.push_back({c.server_id, static_cast<double>(regular_left) /
                                         static_cast<double>(c.inventory.c_r_active)});
    } else {
      others.push_back(c);
    }
  }
  if (spread.empty()) {
    return best_fit(req, candidates);
  }
  sort_by_score(spread);
  auto rest = best_fit(req, others);
  spread.insert(spread.end(), rest.begin(), rest.end());
  return spread;
}

std::vector<ScoredServer> ideal_point(const VmRequest& req, std::span<const Candidate> candidates,
                                      const PolicyConfig& cfg) {
  const IdealPoint& tau = ideal_point_for(req.criticality, cfg);
  std::vector<ScoredServer> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) {
    const double distance = get_distance(get_rnw(c.inventory), get_sq(c.inventory), tau);
    out.push_back({c.server_id, std::clamp(1.0 - distance, 0.0, 1.0)});
  }
  sort_by_score(out);
  return out;
}

}  // namespace

void PolicyConfig::validate() const {
  if (!in_unit_square(tau_critical) || !in_unit_square(tau_best_effort)) {
    throw ValidationError("ideal points must lie in [0,1] x [0,1]");
  }
}

double get_rnw(const GreenCoreInventory& inv) { return used_share_gap(inv.c_g_active, inv.c_g_used); }

double get_sq(const GreenCoreInventory& inv) { return used_share_gap(inv.c_r_active, inv.c_r_used); }

double get_distance(double d_rnw, double d_sq, const IdealPoint& tau) {
  return std::hypot(tau.d_sq - d_sq, tau.d_rnw - d_rnw) / std::numbers::sqrt2;
}

const IdealPoint& ideal_point_for(Criticality c, const PolicyConfig& cfg) noexcept {
  return c == Criticality::critical ? cfg.tau_critical : cfg.tau_best_effort;
}

std::vector<ScoredServer> get_placement_preferences(const VmRequest& req,
                                                    std::span<const Candidate> candidates,
                                                    const PolicyConfig& cfg) {
  switch (cfg.policy) {
    case Policy::proposed:
      return ideal_point(req, candidates, cfg);
    case Policy::best_fit:
      return best_fit(req, candidates);
    case Policy::crit_aware:
      return crit_aware(req, candidates);
  }
  return {};
}

}  // namespace greencores
