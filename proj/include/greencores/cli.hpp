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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "greencores/sim_engine.hpp"
#include "greencores/trace_io.hpp"

namespace greencores::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> vm_trace;
  std::optional<std::filesystem::path> supply_trace;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<std::string> tau_critical;
  std::optional<std::string> tau_best_effort;
  std::optional<int> servers;
  std::optional<Seconds> duration_s;
};

/// Configuration and traces after applying flag > file > default precedence.
/// Missing traces are synthesized from the seed.
struct ResolvedRun {
  SimConfig config;
  SynthSpec synth;
  VmTrace vms;
  SupplyTrace supply;
};

ResolvedRun resolve(const Options& opts);

/// Euclidean distance between the two configured ideal points.
double ideal_point_distance(const PolicyConfig& policy);

/// Moves tau_critical along the line from tau_best_effort through it so the
/// two points end up `distance` apart. Throws ValidationError when the moved
/// point leaves the unit square or the direction is undefined.
IdealPoint reposition_critical(const PolicyConfig& policy, double distance);

int cmd_simulate(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const Options& opts, const std::vector<std::string>& policies, std::ostream& out,
                std::ostream& err);
/// Distances are numbers or the word "default".
int cmd_sweep(const Options& opts, const std::vector<std::string>& distances, std::ostream& out,
              std::ostream& err);
int cmd_gen_trace(const Options& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greencores::cli
