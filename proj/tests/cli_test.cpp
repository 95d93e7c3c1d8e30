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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greencores/cli.hpp"
#include "greencores/report_io.hpp"

namespace greencores {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("greencores_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "greencores");
    std::vector<const char*> argv;
    for (const auto& a : args) {
      argv.push_back(a.c_str());
    }
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::vector<std::string> small(const std::string& sub, const fs::path& out) {
    return {sub, "--servers", "5", "--duration-s", "43200", "--seed", "4", "--out", out.string()};
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SimulateWritesReport) {
  ASSERT_EQ(run(small("simulate", dir_ / "a")), 0) << err_.str();
  ASSERT_TRUE(fs::exists(dir_ / "a" / "report.json"));
  const auto j = nlohmann::json::parse(slurp(dir_ / "a" / "report.json"));
  const SimReport r = report_from_json(j);
  EXPECT_EQ(r.policy, "proposed");
  EXPECT_EQ(r.horizon, 43200);
  EXPECT_NE(out_.str().find("harvest"), std::string::npos);

  std::ifstream ts(dir_ / "a" / "timeseries.csv");
  const auto rows = parse_time_series_csv(ts);
  EXPECT_EQ(rows.size(), 48u);
}

TEST_F(CliTest, MissingTraceNamesThePath) {
  const std::string missing = (dir_ / "nope.csv").string();
  EXPECT_EQ(run({"simulate", "--vm-trace", missing, "--out", dir_.string()}), 1);
  EXPECT_NE(err_.str().find(missing), std::string::npos) << err_.str();
}

TEST_F(CliTest, EmptyVmTraceGivesZeroCounters) {
  const auto vms = write("vms.csv", "vm_id,arrival_s,lifetime_s,cores,criticality\n");
  const auto supply = write("supply.csv", "time_s,value\n0,10\n900,0\n1800,5\n");
  ASSERT_EQ(run({"simulate", "--vm-trace", vms.string(), "--supply-trace", supply.string(),
                 "--servers", "3", "--out", (dir_ / "e").string()}),
            0)
      << err_.str();
  const auto r = report_from_json(nlohmann::json::parse(slurp(dir_ / "e" / "report.json")));
  EXPECT_EQ(r.evictions_critical, 0);
  EXPECT_EQ(r.evictions_best_effort, 0);
  EXPECT_EQ(r.placement_failures, 0);
  EXPECT_EQ(r.harvested_green_core_seconds, 0);
}

TEST_F(CliTest, CompareNeedsTwoKnownPolicies) {
  auto args = small("compare", dir_ / "c");
  args.insert(args.end(), {"--policies", "proposed"});
  EXPECT_EQ(run(args), 1);
  args = small("compare", dir_ / "c");
  args.insert(args.end(), {"--policies", "proposed,first-fit"});
  EXPECT_EQ(run(args), 1);
  EXPECT_NE(err_.str().find("first-fit"), std::string::npos);
}

TEST_F(CliTest, CompareIsReproducible) {
  auto args = small("compare", dir_ / "c1");
  args.insert(args.end(), {"--policies", "proposed,best-fit,crit-aware"});
  ASSERT_EQ(run(args), 0) << err_.str();
  args = small("compare", dir_ / "c2");
  args.insert(args.end(), {"--policies", "proposed,best-fit,crit-aware"});
  ASSERT_EQ(run(args), 0) << err_.str();
  EXPECT_EQ(slurp(dir_ / "c1" / "compare.json"), slurp(dir_ / "c2" / "compare.json"));

  const auto j = nlohmann::json::parse(slurp(dir_ / "c1" / "compare.json"));
  ASSERT_EQ(j["policies"].size(), 3u);
  double max_norm = 0.0;
  for (const auto& p : j["policies"]) {
    EXPECT_EQ(p["report"]["trace_hash"], j["trace_hash"]);
    max_norm = std::max(max_norm, p["normalized_harvest"].get<double>());
  }
  EXPECT_DOUBLE_EQ(max_norm, 1.0);

  std::istringstream csv(slurp(dir_ / "c1" / "compare.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "policy,normalized_harvest,evictions_critical,evictions_best_effort");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, SweepAtDefaultMatchesSimulate) {
  ASSERT_EQ(run(small("simulate", dir_ / "s")), 0) << err_.str();
  const auto r = report_from_json(nlohmann::json::parse(slurp(dir_ / "s" / "report.json")));
  auto args = small("sweep", dir_ / "w");
  args.insert(args.end(), {"--distances", "default,0"});
  ASSERT_EQ(run(args), 0) << err_.str();

  std::istringstream csv(slurp(dir_ / "w" / "sweep.csv"));
  std::string header;
  std::string first;
  std::string second;
  std::getline(csv, header);
  std::getline(csv, first);
  std::getline(csv, second);
  EXPECT_EQ(header.rfind("distance,harvest,evictions", 0), 0u);
  std::istringstream fields(first);
  std::string distance;
  std::string harvest;
  std::string evictions;
  std::getline(fields, distance, ',');
  std::getline(fields, harvest, ',');
  std::getline(fields, evictions, ',');
  EXPECT_EQ(std::stoll(harvest), r.harvested_green_core_seconds);
  EXPECT_EQ(std::stoll(evictions), r.evictions_total());
  // At distance 0 the critical point sits on the best-effort point.
  EXPECT_NE(second.find(",0.2,0"), std::string::npos) << second;
}

TEST_F(CliTest, InfeasibleSweepDistance) {
  auto args = small("sweep", dir_ / "w");
  args.insert(args.end(), {"--distances", "1.30"});
  EXPECT_EQ(run(args), 1);
  EXPECT_NE(err_.str().find("outside"), std::string::npos) << err_.str();
}

TEST_F(CliTest, RepositionKeepsDirection) {
  PolicyConfig p;
  EXPECT_EQ(cli::reposition_critical(p, cli::ideal_point_distance(p)), p.tau_critical);
  const IdealPoint zero = cli::reposition_critical(p, 0.0);
  EXPECT_DOUBLE_EQ(zero.d_rnw, 0.2);
  EXPECT_DOUBLE_EQ(zero.d_sq, 0.0);
  const IdealPoint half = cli::reposition_critical(p, cli::ideal_point_distance(p) / 2.0);
  EXPECT_NEAR(half.d_rnw, 0.6, 1e-12);
  EXPECT_NEAR(half.d_sq, 0.25, 1e-12);
  EXPECT_THROW(cli::reposition_critical(p, 1.3), ValidationError);
  EXPECT_THROW(cli::reposition_critical(p, -0.1), ValidationError);
}

TEST_F(CliTest, GenTraceRoundTrips) {
  ASSERT_EQ(run(small("gen-trace", dir_ / "g")), 0) << err_.str();
  const auto vms = read_vm_trace(dir_ / "g" / "vm_trace.csv");
  const auto supply = read_supply_trace(dir_ / "g" / "supply.csv", 4);
  EXPECT_FALSE(vms.empty());
  std::ostringstream canon;
  write_vm_trace(canon, vms);
  EXPECT_EQ(canon.str(), slurp(dir_ / "g" / "vm_trace.csv"));

  // Feeding the generated files back reproduces the synthesized run.
  ASSERT_EQ(run(small("simulate", dir_ / "s1")), 0);
  auto args = small("simulate", dir_ / "s2");
  args.insert(args.end(), {"--vm-trace", (dir_ / "g" / "vm_trace.csv").string(), "--supply-trace",
                           (dir_ / "g" / "supply.csv").string()});
  ASSERT_EQ(run(args), 0) << err_.str();
  const auto a = nlohmann::json::parse(slurp(dir_ / "s1" / "report.json"));
  const auto b = nlohmann::json::parse(slurp(dir_ / "s2" / "report.json"));
  EXPECT_EQ(a, b);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto cfg = write("run.conf",
                         "# desk run\n"
                         "servers = 4\n"
                         "policy = best-fit\n"
                         "duration_s = 3600\n");
  ASSERT_EQ(run({"simulate", "--config", cfg.string(), "--out", (dir_ / "p1").string()}), 0)
      << err_.str();
  auto r = report_from_json(nlohmann::json::parse(slurp(dir_ / "p1" / "report.json")));
  EXPECT_EQ(r.policy, "best-fit");
  EXPECT_EQ(r.horizon, 3600);
  ASSERT_EQ(run({"simulate", "--config", cfg.string(), "--policy", "crit-aware", "--out",
                 (dir_ / "p2").string()}),
            0);
  r = report_from_json(nlohmann::json::parse(slurp(dir_ / "p2" / "report.json")));
  EXPECT_EQ(r.policy, "crit-aware");

  const auto bad = write("bad.conf", "servres = 4\n");
  EXPECT_EQ(run({"simulate", "--config", bad.string(), "--out", dir_.string()}), 1);
  EXPECT_NE(err_.str().find("servres"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = GREENCORES_CLI_PATH;
  const std::string quiet = " >/dev/null 2>&1";
  EXPECT_EQ(std::system((bin + " simulate --vm-trace /nonexistent/x.csv" + quiet).c_str()) >> 8,
            1);
  EXPECT_EQ(std::system((bin + " gen-trace --duration-s 3600 --out " + (dir_ / "b").string() +
                         quiet)
                            .c_str()) >>
                8,
            0);
  EXPECT_EQ(std::system((bin + " frobnicate" + quiet).c_str()) >> 8, 1);
}

}  // namespace
}  // namespace greencores
