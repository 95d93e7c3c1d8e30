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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "greencores/packing.hpp"

namespace greencores {
namespace {

// Inventory with the requested (d_rnw, d_sq) on a 40 + 40 core server.
GreenCoreInventory at(double d_rnw, double d_sq) {
  GreenCoreInventory inv;
  inv.c_g_active = 40;
  inv.c_g_used = static_cast<CoreCount>(std::lround(40 * (1.0 - d_rnw)));
  inv.c_r_active = 40;
  inv.c_r_used = static_cast<CoreCount>(std::lround(40 * (1.0 - d_sq)));
  return inv;
}

VmRequest request(Criticality c, CoreCount cores = 1) { return VmRequest{1, cores, c, 0, 60}; }

TEST(GetRnw, Examples) {
  EXPECT_DOUBLE_EQ(get_rnw({4, 2, 40, 40}), 0.5);
  EXPECT_DOUBLE_EQ(get_rnw({4, 4, 40, 40}), 0.0);
  EXPECT_DOUBLE_EQ(get_rnw({0, 0, 40, 40}), 0.0);
}

TEST(GetSq, Examples) {
  EXPECT_DOUBLE_EQ(get_sq({4, 0, 40, 40}), 0.0);
  EXPECT_DOUBLE_EQ(get_sq({4, 0, 40, 10}), 0.75);
  EXPECT_DOUBLE_EQ(get_sq({4, 0, 40, 0}), 1.0);
  EXPECT_DOUBLE_EQ(get_sq({4, 0, 0, 0}), 0.0);
}

TEST(GetDistance, Examples) {
  EXPECT_DOUBLE_EQ(get_distance(1.0, 0.5, {1.0, 0.5}), 0.0);
  EXPECT_NEAR(get_distance(0.0, 0.0, {1.0, 0.5}), std::sqrt(1.25) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(get_distance(0.0, 0.0, {1.0, 1.0}), 1.0, 1e-15);
}

TEST(Preferences, CriticalPicksItsIdealPoint) {
  const PolicyConfig cfg;
  const std::vector<Candidate> c{{7, at(1.0, 0.5)}, {3, at(0.2, 0.0)}};
  const auto ranked = get_placement_preferences(request(Criticality::critical), c, cfg);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].server_id, 7u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
  EXPECT_NEAR(ranked[1].score, 1.0 - std::hypot(0.8, 0.5) / std::sqrt(2.0), 1e-12);
}

TEST(Preferences, BestEffortPicksItsIdealPoint) {
  const PolicyConfig cfg;
  const std::vector<Candidate> c{{7, at(1.0, 0.5)}, {3, at(0.2, 0.0)}};
  const auto ranked = get_placement_preferences(request(Criticality::best_effort), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 3u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
}

TEST(Preferences, SingletonAndEmpty) {
  for (Policy p : {Policy::proposed, Policy::best_fit, Policy::crit_aware}) {
    PolicyConfig cfg;
    cfg.policy = p;
    const std::vector<Candidate> one{{4, {4, 0, 40, 12}}};
    const auto ranked = get_placement_preferences(request(Criticality::critical), one, cfg);
    ASSERT_EQ(ranked.size(), 1u);
    EXPECT_EQ(ranked[0].server_id, 4u);
    EXPECT_TRUE(get_placement_preferences(request(Criticality::critical), {}, cfg).empty());
  }
}

TEST(Preferences, TiesFallToSmallerId) {
  const PolicyConfig cfg;
  const std::vector<Candidate> c{{9, at(0.5, 0.5)}, {2, at(0.5, 0.5)}, {5, at(0.5, 0.5)}};
  const auto ranked = get_placement_preferences(request(Criticality::critical), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 2u);
  EXPECT_EQ(ranked[1].server_id, 5u);
  EXPECT_EQ(ranked[2].server_id, 9u);
}

TEST(BestFit, TightestServerFirst) {
  PolicyConfig cfg;
  cfg.policy = Policy::best_fit;
  const std::vector<Candidate> c{
      {0, {4, 0, 40, 10}},  // 34 free
      {1, {4, 2, 40, 40}},  // 2 free
      {2, {0, 0, 40, 37}},  // 3 free
  };
  const auto ranked = get_placement_preferences(request(Criticality::critical, 2), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 1u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
  EXPECT_EQ(ranked[1].server_id, 2u);
  EXPECT_EQ(ranked[2].server_id, 0u);
}

TEST(CritAware, CriticalSpreadsOverRegularCores) {
  PolicyConfig cfg;
  cfg.policy = Policy::crit_aware;
  const std::vector<Candidate> c{
      {0, {4, 0, 40, 38}},  // 2 would spill onto green
      {1, {4, 0, 40, 20}},
      {2, {4, 0, 40, 5}},
  };
  auto ranked = get_placement_preferences(request(Criticality::critical, 4), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 2u);
  EXPECT_EQ(ranked[1].server_id, 1u);
  EXPECT_EQ(ranked.back().server_id, 0u);

  // Best-effort VMs use plain best-fit.
  ranked = get_placement_preferences(request(Criticality::best_effort, 4), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 0u);
}

TEST(CritAware, FallsBackToBestFitWhenGreenUnavoidable) {
  PolicyConfig cfg;
  cfg.policy = Policy::crit_aware;
  const std::vector<Candidate> c{{0, {4, 0, 40, 38}}, {1, {4, 1, 40, 40}}};
  const auto ranked = get_placement_preferences(request(Criticality::critical, 3), c, cfg);
  EXPECT_EQ(ranked[0].server_id, 1u);
}

TEST(PolicyConfig, RejectsPointsOutsideSquare) {
  PolicyConfig cfg;
  cfg.tau_critical = {1.1, 0.5};
  EXPECT_THROW(cfg.validate(), ValidationError);
  EXPECT_THROW(parse_policy("first-fit"), ValidationError);
  EXPECT_EQ(parse_policy("crit-aware"), Policy::crit_aware);
}

GreenCoreInventory random_inventory(std::mt19937& rng) {
  GreenCoreInventory inv;
  inv.c_g_active = std::uniform_int_distribution<int>(0, 8)(rng);
  inv.c_r_active = std::uniform_int_distribution<int>(1, 40)(rng);
  inv.c_r_used = std::uniform_int_distribution<int>(0, inv.c_r_active)(rng);
  inv.c_g_used = inv.c_r_used == inv.c_r_active
                     ? std::uniform_int_distribution<int>(0, inv.c_g_active)(rng)
                     : 0;
  return inv;
}

TEST(PackingProperties, ScoresBoundedAndExactAtIdeal) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const GreenCoreInventory inv = random_inventory(rng);
    PolicyConfig cfg;
    cfg.tau_critical = {get_rnw(inv), get_sq(inv)};
    const std::vector<Candidate> c{{0, inv}};
    const auto ranked = get_placement_preferences(request(Criticality::critical), c, cfg);
    EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
    const auto other = get_placement_preferences(request(Criticality::best_effort), c, cfg);
    EXPECT_GE(other[0].score, 0.0);
    EXPECT_LE(other[0].score, 1.0);
    if (other[0].score == 1.0) {
      EXPECT_DOUBLE_EQ(get_rnw(inv), cfg.tau_best_effort.d_rnw);
      EXPECT_DOUBLE_EQ(get_sq(inv), cfg.tau_best_effort.d_sq);
    }
  }
}

TEST(PackingProperties, Deterministic) {
  std::mt19937 rng(5);
  std::vector<Candidate> c;
  for (ServerId i = 0; i < 64; ++i) {
    c.push_back({i, random_inventory(rng)});
  }
  for (Policy p : {Policy::proposed, Policy::best_fit, Policy::crit_aware}) {
    PolicyConfig cfg;
    cfg.policy = p;
    auto reversed = c;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_EQ(get_placement_preferences(request(Criticality::critical), c, cfg),
              get_placement_preferences(request(Criticality::critical), reversed, cfg));
  }
}

TEST(PackingProperties, ArgmaxSurvivesTranslation) {
  // Shifting the ideal point and every feature vector by the same offset
  // leaves every distance, hence the winner, unchanged.
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const IdealPoint tau{u(rng) * 0.5, u(rng) * 0.5};
    const double dx = u(rng) * 0.5;
    const double dy = u(rng) * 0.5;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 10; ++i) {
      pts.emplace_back(u(rng) * 0.5, u(rng) * 0.5);
    }
    auto winner = [&](double ox, double oy) {
      std::size_t best = 0;
      double best_d = 2.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = get_distance(pts[i].first + ox, pts[i].second + oy,
                                      IdealPoint{tau.d_rnw + ox, tau.d_sq + oy});
        if (d < best_d - 1e-12) {
          best_d = d;
          best = i;
        }
      }
      return best;
    };
    EXPECT_EQ(winner(0.0, 0.0), winner(dx, dy));
  }
}

TEST(PackingProperties, IdealPointDependsOnlyOnCriticality) {
  PolicyConfig cfg;
  EXPECT_EQ(ideal_point_for(Criticality::critical, cfg), cfg.tau_critical);
  EXPECT_EQ(ideal_point_for(Criticality::best_effort, cfg), cfg.tau_best_effort);
}

TEST(PackingProperties, BestFitMinimizesLeftover) {
  std::mt19937 rng(13);
  PolicyConfig cfg;
  cfg.policy = Policy::best_fit;
  for (int trial = 0; trial < 1000; ++trial) {
    const CoreCount cores = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<Candidate> c;
    for (ServerId i = 0; i < 12; ++i) {
      const auto inv = random_inventory(rng);
      if (inv.free_awake() >= cores) {
        c.push_back({i, inv});
      }
    }
    if (c.empty()) {
      continue;
    }
    CoreCount min_left = 1 << 20;
    for (const auto& x : c) {
      min_left = std::min(min_left, x.inventory.free_awake() - cores);
    }
    const auto ranked = get_placement_preferences(request(Criticality::critical, cores), c, cfg);
    const auto chosen = std::find_if(c.begin(), c.end(), [&](const Candidate& x) {
      return x.server_id == ranked[0].server_id;
    });
    EXPECT_EQ(chosen->inventory.free_awake() - cores, min_left);
  }
}

}  // namespace
}  // namespace greencores
