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

#include "greencores/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace greencores {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

std::string where(const std::string& source, int line_no) {
  return source + ":" + std::to_string(line_no) + ": ";
}

// Reads the next non-blank line; false at end of input.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      return true;
    }
  }
  return false;
}

}  // namespace

VmTrace parse_vm_trace(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) {
    throw ValidationError(source + ": missing header");
  }
  const auto header = split_csv(line);
  const std::vector<std::string_view> expected{"vm_id", "arrival_s", "lifetime_s", "cores",
                                               "criticality"};
  if (header != expected) {
    throw ValidationError(where(source, line_no) +
                          "expected header vm_id,arrival_s,lifetime_s,cores,criticality");
  }

  VmTrace trace;
  while (next_line(in, line, line_no)) {
    const auto f = split_csv(line);
    if (f.size() != 5) {
      throw ValidationError(where(source, line_no) + "expected 5 fields, got " +
                            std::to_string(f.size()));
    }
    const auto id = parse_int(f[0]);
    const auto arrival = parse_int(f[1]);
    const auto lifetime = parse_int(f[2]);
    const auto cores = parse_int(f[3]);
    if (!id || *id < 0 || !arrival || !lifetime || !cores) {
      throw ValidationError(where(source, line_no) + "malformed numeric field");
    }
    VmRequest req;
    req.vm_id = static_cast<VmId>(*id);
    req.arrival_time = *arrival;
    req.lifetime = *lifetime;
    req.core_count = static_cast<CoreCount>(*cores);
    try {
      req.criticality = parse_criticality(f[4]);
    } catch (const ValidationError& e) {
      throw ValidationError(where(source, line_no) + e.what());
    }
    if (req.core_count < 1 || req.lifetime <= 0 || req.arrival_time < 0) {
      throw ValidationError(where(source, line_no) +
                            "cores must be >= 1, lifetime > 0 and arrival >= 0");
    }
    if (!trace.empty() && req.arrival_time < trace.back().arrival_time) {
      throw ValidationError(where(source, line_no) + "arrival times must be nondecreasing");
    }
    trace.push_back(req);
  }
  validate_vm_trace(trace);
  return trace;
}

VmTrace read_vm_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open VM trace " + path.string());
  }
  return parse_vm_trace(in, path.string());
}

void write_vm_trace(std::ostream& out, std::span<const VmRequest> trace) {
  out << "vm_id,arrival_s,lifetime_s,cores,criticality\n";
  for (const auto& r : trace) {
    out << r.vm_id << ',' << r.arrival_time << ',' << r.lifetime << ',' << r.core_count << ','
        << to_string(r.criticality) << '\n';
  }
}

void validate_vm_trace(std::span<const VmRequest> trace) {
  std::set<VmId> seen;
  Seconds last = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    if (!seen.insert(r.vm_id).second) {
      throw ValidationError("duplicate vm_id " + std::to_string(r.vm_id));
    }
    if (r.core_count < 1 || r.lifetime <= 0 || r.arrival_time < 0) {
      throw ValidationError("VM " + std::to_string(r.vm_id) +
                            " needs cores >= 1, lifetime > 0 and arrival >= 0");
    }
    if (i > 0 && r.arrival_time < last) {
      throw ValidationError("VM trace arrivals are not time-sorted at vm_id " +
                            std::to_string(r.vm_id));
    }
    last = r.arrival_time;
  }
}

SupplyTrace parse_supply_trace(std::istream& in, CoreCount n_green, const std::string& source) {
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) {
    throw ValidationError(source + ": missing header");
  }
  const auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "time_s" ||
      (header[1] != "value" && header[1] != "fraction")) {
    throw ValidationError(where(source, line_no) +
                          "expected header time_s,value or time_s,fraction");
  }
  const bool raw = header[1] == "value";

  std::vector<RawSupplySample> rows;
  while (next_line(in, line, line_no)) {
    const auto f = split_csv(line);
    if (f.size() != 2) {
      throw ValidationError(where(source, line_no) + "expected 2 fields");
    }
    const auto t = parse_int(f[0]);
    const auto v = parse_double(f[1]);
    if (!t || !v || !std::isfinite(*v)) {
      throw ValidationError(where(source, line_no) + "malformed numeric field");
    }
    if (!rows.empty() && *t < rows.back().time) {
      throw ValidationError(where(source, line_no) + "times must be nondecreasing");
    }
    if (*v < 0.0 || (!raw && *v > 1.0)) {
      throw ValidationError(where(source, line_no) + "value out of range");
    }
    rows.push_back({*t, *v});
  }

  if (raw) {
    return normalize_supply(rows, n_green);
  }
  SupplyTrace trace;
  trace.reserve(rows.size());
  for (const auto& r : rows) {
    trace.push_back({r.time, r.value});
  }
  validate_supply_trace(trace);
  return trace;
}

SupplyTrace read_supply_trace(const std::filesystem::path& path, CoreCount n_green) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open supply trace " + path.string());
  }
  return parse_supply_trace(in, n_green, path.string());
}

void write_supply_trace(std::ostream& out, std::span<const SupplySample> trace) {
  out << "time_s,fraction\n";
  for (const auto& s : trace) {
    out << s.time << ',' << format_double(s.capacity_fraction) << '\n';
  }
}

void validate_supply_trace(std::span<const SupplySample> trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    if (!(s.capacity_fraction >= 0.0 && s.capacity_fraction <= 1.0)) {
      throw ValidationError("supply fraction out of [0,1] at t=" + std::to_string(s.time));
    }
    if (s.time < 0 || (i > 0 && s.time < trace[i - 1].time)) {
      throw ValidationError("supply trace times must be nonnegative and nondecreasing");
    }
  }
}

SupplyTrace normalize_supply(std::span<const RawSupplySample> raw, CoreCount n_green) {
  if (raw.empty()) {
    throw ValidationError("supply trace is empty");
  }
  if (n_green < 1) {
    throw ValidationError("normalization needs at least one renewables-driven core");
  }
  double peak = 0.0;
  for (const auto& s : raw) {
    if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
      throw ValidationError("raw supply values must be finite and nonnegative");
    }
    peak = std::max(peak, s.value);
  }
  if (peak <= 0.0) {
    throw ValidationError("supply trace has no renewable capacity (all zero)");
  }
  SupplyTrace out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    out.push_back({s.time, s.value == peak ? 1.0 : s.value / peak});
  }
  validate_supply_trace(out);
  return out;
}

void SynthSpec::validate() const {
  if (servers < 1) {
    throw ValidationError("synthetic workload: servers must be >= 1");
  }
  if (duration_s <= 0 || supply_step_s <= 0) {
    throw ValidationError("synthetic workload: duration and supply step must be positive");
  }
  if (!(arrivals_per_hour > 0.0)) {
    throw ValidationError("synthetic workload: arrival rate must be positive");
  }
  if (!(lifetime_median_s > 0.0) || !(lifetime_sigma >= 0.0)) {
    throw ValidationError("synthetic workload: lifetime median must be positive, sigma >= 0");
  }
  if (core_values.empty() ||
      std::any_of(core_values.begin(), core_values.end(), [](CoreCount c) { return c < 1; })) {
    throw ValidationError("synthetic workload: core values must be positive");
  }
  if (!(core_geometric_p > 0.0 && core_geometric_p < 1.0)) {
    throw ValidationError("synthetic workload: core_geometric_p must lie in (0, 1)");
  }
  if (!(best_effort_share >= 0.0 && best_effort_share <= 1.0)) {
    throw ValidationError("synthetic workload: best_effort_share must lie in [0, 1]");
  }
  if (!(sunrise_hour >= 0.0 && sunrise_hour < sunset_hour && sunset_hour <= 24.0)) {
    throw ValidationError("synthetic workload: need 0 <= sunrise_hour < sunset_hour <= 24");
  }
}

SynthSpec SynthSpec::from_document(const KvDocument& doc) {
  SynthSpec s;
  s.servers = static_cast<int>(doc.get_int("servers", s.servers));
  s.duration_s = doc.get_int("duration_s", s.duration_s);
  s.arrivals_per_hour = doc.get_double("arrivals_per_hour", s.arrivals_per_hour);
  s.lifetime_median_s = doc.get_double("lifetime_median_s", s.lifetime_median_s);
  s.lifetime_sigma = doc.get_double("lifetime_sigma", s.lifetime_sigma);
  if (const auto values = doc.get("core_values")) {
    s.core_values.clear();
    std::string_view rest = *values;
    for (auto field : split_csv(rest)) {
      const auto v = parse_int(field);
      if (!v) {
        throw ValidationError("synthetic workload: bad core_values entry '" + std::string(field) +
                              "'");
      }
      s.core_values.push_back(static_cast<CoreCount>(*v));
    }
  }
  s.core_geometric_p = doc.get_double("core_geometric_p", s.core_geometric_p);
  s.best_effort_share = doc.get_double("best_effort_share", s.best_effort_share);
  s.sunrise_hour = doc.get_double("sunrise_hour", s.sunrise_hour);
  s.sunset_hour = doc.get_double("sunset_hour", s.sunset_hour);
  s.supply_step_s = doc.get_int("supply_step_s", s.supply_step_s);
  s.validate();
  return s;
}

double diurnal_fraction(const SynthSpec& spec, Seconds t) {
  constexpr double kDay = 24.0 * 3600.0;
  const double hour = std::fmod(static_cast<double>(t), kDay) / 3600.0;
  const double daylight = spec.sunset_hour - spec.sunrise_hour;
  const double phase = (hour - spec.sunrise_hour) / daylight;
  return std::clamp(std::sin(std::numbers::pi * phase), 0.0, 1.0) *
         static_cast<double>(phase > 0.0 && phase < 1.0);
}

SyntheticTraces synth_traces(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);

  std::vector<double> weights;
  double w = 1.0;
  for (std::size_t i = 0; i < spec.core_values.size(); ++i) {
    weights.push_back(w);
    w *= 1.0 - spec.core_geometric_p;
  }
  std::discrete_distribution<std::size_t> core_pick(weights.begin(), weights.end());
  std::exponential_distribution<double> gap(spec.arrivals_per_hour / 3600.0);
  std::lognormal_distribution<double> life(std::log(spec.lifetime_median_s), spec.lifetime_sigma);
  std::bernoulli_distribution best_effort(spec.best_effort_share);

  SyntheticTraces out;
  double clock = gap(rng);
  VmId next_id = 0;
  while (clock < static_cast<double>(spec.duration_s)) {
    VmRequest r;
    r.vm_id = next_id++;
    r.arrival_time = static_cast<Seconds>(std::floor(clock));
    r.lifetime = std::max<Seconds>(1, std::llround(life(rng)));
    r.core_count = spec.core_values[core_pick(rng)];
    r.criticality = best_effort(rng) ? Criticality::best_effort : Criticality::critical;
    out.vms.push_back(r);
    clock += gap(rng);
  }

  for (Seconds t = 0; t < spec.duration_s; t += spec.supply_step_s) {
    out.supply.push_back({t, diurnal_fraction(spec, t)});
  }
  return out;
}

std::uint64_t trace_hash(std::span<const VmRequest> vms, std::span<const SupplySample> supply) {
  std::ostringstream canon;
  write_vm_trace(canon, vms);
  write_supply_trace(canon, supply);
  const std::string text = canon.str();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace greencores
