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

#include "greencores/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <set>

#include "greencores/config.hpp"
#include "greencores/report_io.hpp"

namespace greencores::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path);
  if (!file) {
    throw ValidationError("cannot write " + path.string());
  }
  return file;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ValidationError("cannot create output directory " + dir.string());
  }
}

std::string summary_line(const SimReport& r) {
  std::ostringstream s;
  s << r.policy << ": harvest=" << r.harvested_green_core_seconds << " core-s"
    << " evictions(critical=" << r.evictions_critical << ", best-effort=" << r.evictions_best_effort
    << ") failures=" << r.placement_failures;
  return s.str();
}

// Runs independent simulations concurrently; results keep input order.
std::vector<SimReport> run_all(const std::vector<SimConfig>& configs, const ResolvedRun& run) {
  std::vector<std::future<SimReport>> jobs;
  jobs.reserve(configs.size());
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [&run, cfg] {
      return run_simulation(cfg, run.vms, run.supply);
    }));
  }
  std::vector<SimReport> reports;
  reports.reserve(jobs.size());
  for (auto& j : jobs) {
    reports.push_back(j.get());
  }
  return reports;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kRuntime;
  } catch (const CapacityError& e) {
    err << "internal error: " << e.what() << '\n';
    return kRuntime;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace

ResolvedRun resolve(const Options& opts) {
  KvDocument doc;
  if (opts.config) {
    doc = KvDocument::load(*opts.config);
  }
  // Flags win over the file.
  if (opts.servers) {
    doc.set("servers", std::to_string(*opts.servers));
  }
  if (opts.duration_s) {
    doc.set("duration_s", std::to_string(*opts.duration_s));
  }
  if (opts.seed) {
    doc.set("seed", std::to_string(*opts.seed));
  }
  if (opts.policy) {
    doc.set("policy", *opts.policy);
  }
  if (opts.tau_critical) {
    doc.set("tau_critical", *opts.tau_critical);
  }
  if (opts.tau_best_effort) {
    doc.set("tau_best_effort", *opts.tau_best_effort);
  }

  ResolvedRun run;
  run.config = sim_config_from_document(doc);
  run.synth = SynthSpec::from_document(doc);
  run.synth.servers = run.config.server_count;
  run.synth.supply_step_s = run.config.supply_step;
  if (run.config.duration > 0) {
    run.synth.duration_s = run.config.duration;
  }

  std::optional<SyntheticTraces> synthetic;
  if (!opts.vm_trace || !opts.supply_trace) {
    synthetic = synth_traces(run.synth, run.config.seed);
  }
  if (opts.vm_trace) {
    run.vms = read_vm_trace(*opts.vm_trace);
  } else {
    run.vms = std::move(synthetic->vms);
  }
  if (opts.supply_trace) {
    run.supply = read_supply_trace(*opts.supply_trace, run.config.renewables_core_count);
  } else {
    run.supply = std::move(synthetic->supply);
  }
  if (synthetic && run.config.duration == 0) {
    run.config.duration = run.synth.duration_s;
  }
  return run;
}

double ideal_point_distance(const PolicyConfig& policy) {
  return std::hypot(policy.tau_critical.d_rnw - policy.tau_best_effort.d_rnw,
                    policy.tau_critical.d_sq - policy.tau_best_effort.d_sq);
}

IdealPoint reposition_critical(const PolicyConfig& policy, double distance) {
  constexpr double kSlack = 1e-12;
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw ValidationError("sweep distance must be a nonnegative number");
  }
  const double current = ideal_point_distance(policy);
  if (std::abs(distance - current) <= kSlack) {
    return policy.tau_critical;
  }
  if (current == 0.0) {
    throw ValidationError("ideal points coincide; no direction to move along");
  }
  const double scale = distance / current;
  const IdealPoint& from = policy.tau_best_effort;
  IdealPoint moved{from.d_rnw + (policy.tau_critical.d_rnw - from.d_rnw) * scale,
                   from.d_sq + (policy.tau_critical.d_sq - from.d_sq) * scale};
  auto inside = [](double v) { return v >= -kSlack && v <= 1.0 + kSlack; };
  if (!inside(moved.d_rnw) || !inside(moved.d_sq)) {
    std::ostringstream msg;
    msg << "distance " << distance << " moves the critical ideal point to (" << moved.d_rnw << ", "
        << moved.d_sq << "), outside [0,1] x [0,1]";
    throw ValidationError(msg.str());
  }
  moved.d_rnw = std::clamp(moved.d_rnw, 0.0, 1.0);
  moved.d_sq = std::clamp(moved.d_sq, 0.0, 1.0);
  return moved;
}

int cmd_simulate(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedRun run = resolve(opts);
    err << "simulating " << run.vms.size() << " VMs on " << run.config.server_count
        << " servers\n";
    const SimReport report = run_simulation(run.config, run.vms, run.supply);
    ensure_dir(opts.out);
    open_output(opts.out / "report.json") << report_to_json(report).dump(2) << '\n';
    auto ts = open_output(opts.out / "timeseries.csv");
    write_time_series_csv(ts, report.time_series);
    out << summary_line(report) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_compare(const Options& opts, const std::vector<std::string>& policies, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    if (policies.size() < 2) {
      throw ValidationError("compare needs at least two policies");
    }
    std::set<std::string> seen;
    std::vector<SimConfig> configs;
    const ResolvedRun run = resolve(opts);
    for (const auto& name : policies) {
      if (!seen.insert(name).second) {
        throw ValidationError("policy '" + name + "' listed twice");
      }
      SimConfig cfg = run.config;
      cfg.policy.policy = parse_policy(name);
      configs.push_back(cfg);
    }
    err << "comparing " << configs.size() << " policies on " << run.vms.size() << " VMs\n";
    const CompareReport report = build_compare_report(run_all(configs, run));
    ensure_dir(opts.out);
    open_output(opts.out / "compare.json") << compare_to_json(report).dump(2) << '\n';
    auto csv = open_output(opts.out / "compare.csv");
    write_compare_csv(csv, report);
    for (const auto& pc : report.policies) {
      out << summary_line(pc.report) << " normalized_harvest=" << pc.normalized_harvest << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const Options& opts, const std::vector<std::string>& distances, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    if (distances.empty()) {
      throw ValidationError("sweep needs at least one distance");
    }
    const ResolvedRun run = resolve(opts);
    SimConfig base = run.config;
    base.policy.policy = Policy::proposed;

    std::vector<double> values;
    std::vector<SimConfig> configs;
    for (const auto& text : distances) {
      double d = 0.0;
      if (text == "default") {
        d = ideal_point_distance(base.policy);
      } else if (const auto v = parse_double(text)) {
        d = *v;
      } else {
        throw ValidationError("bad sweep distance '" + text + "'");
      }
      SimConfig cfg = base;
      cfg.policy.tau_critical = reposition_critical(base.policy, d);
      values.push_back(d);
      configs.push_back(cfg);
    }
    err << "sweeping " << configs.size() << " ideal-point distances\n";
    const auto reports = run_all(configs, run);

    ensure_dir(opts.out);
    auto csv = open_output(opts.out / "sweep.csv");
    csv << "distance,harvest,evictions,evictions_critical,evictions_best_effort,"
           "tau_critical_rnw,tau_critical_sq\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      const auto& tau = configs[i].policy.tau_critical;
      csv << format_double(values[i]) << ',' << r.harvested_green_core_seconds << ','
          << r.evictions_total() << ',' << r.evictions_critical << ',' << r.evictions_best_effort
          << ',' << format_double(tau.d_rnw) << ',' << format_double(tau.d_sq) << '\n';
      out << "distance=" << values[i] << ' ' << summary_line(r) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_gen_trace(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Options synth_only = opts;
    synth_only.vm_trace.reset();
    synth_only.supply_trace.reset();
    const ResolvedRun run = resolve(synth_only);
    ensure_dir(opts.out);
    auto vm = open_output(opts.out / "vm_trace.csv");
    write_vm_trace(vm, run.vms);
    auto supply = open_output(opts.out / "supply.csv");
    write_supply_trace(supply, run.supply);
    out << "wrote " << run.vms.size() << " VMs and " << run.supply.size() << " supply samples to "
        << opts.out.string() << '\n';
    return static_cast<int>(kOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Carbon-aware VM packing simulator with renewables-driven cores"};
  app.require_subcommand(1);

  Options opts;
  std::string config, vm_trace, supply_trace, out_dir = ".", policy, tau_c, tau_b;
  std::uint64_t seed = 0;
  int servers = 0;
  Seconds duration = 0;
  std::vector<std::string> policies;
  std::vector<std::string> distances;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "key = value configuration file");
    cmd->add_option("--vm-trace", vm_trace, "VM arrival CSV");
    cmd->add_option("--supply-trace", supply_trace, "renewable supply CSV");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "seed for synthesized traces");
    cmd->add_option("--policy", policy, "proposed | best-fit | crit-aware");
    cmd->add_option("--tau-critical", tau_c, "critical ideal point d_rnw,d_sq");
    cmd->add_option("--tau-best-effort", tau_b, "best-effort ideal point d_rnw,d_sq");
    cmd->add_option("--servers", servers, "fleet size");
    cmd->add_option("--duration-s", duration, "simulated horizon in seconds");
  };

  auto* simulate = app.add_subcommand("simulate", "run one simulation");
  add_common(simulate);
  auto* compare = app.add_subcommand("compare", "run several policies on one trace");
  add_common(compare);
  compare->add_option("--policies", policies, "policies to compare")
      ->delimiter(',')
      ->default_str("proposed,best-fit,crit-aware");
  auto* sweep = app.add_subcommand("sweep", "ideal-point distance sensitivity sweep");
  add_common(sweep);
  sweep->add_option("--distances", distances, "inter-ideal-point distances (or 'default')")
      ->delimiter(',')
      ->required();
  auto* gen = app.add_subcommand("gen-trace", "write synthetic VM and supply traces");
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  auto given = [&](const char* flag) { return chosen->count(flag) > 0; };
  if (given("--config")) opts.config = config;
  if (given("--vm-trace")) opts.vm_trace = vm_trace;
  if (given("--supply-trace")) opts.supply_trace = supply_trace;
  opts.out = out_dir;
  if (given("--seed")) opts.seed = seed;
  if (given("--policy")) opts.policy = policy;
  if (given("--tau-critical")) opts.tau_critical = tau_c;
  if (given("--tau-best-effort")) opts.tau_best_effort = tau_b;
  if (given("--servers")) opts.servers = servers;
  if (given("--duration-s")) opts.duration_s = duration;

  if (chosen == simulate) {
    return cmd_simulate(opts, out, err);
  }
  if (chosen == compare) {
    if (policies.empty()) {
      policies = {"proposed", "best-fit", "crit-aware"};
    }
    return cmd_compare(opts, policies, out, err);
  }
  if (chosen == sweep) {
    return cmd_sweep(opts, distances, out, err);
  }
  return cmd_gen_trace(opts, out, err);
}

}  // namespace greencores::cli
