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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace greencores {

using CoreCount = int;
using VmId = std::uint64_t;
using ServerId = std::uint32_t;

/// Simulated time, integer seconds from simulation start.
using Seconds = std::int64_t;

enum class Criticality : std::uint8_t { critical, best_effort };

std::string_view to_string(Criticality c) noexcept;
Criticality parse_criticality(std::string_view text);

/// Bad input: malformed traces, inconsistent configuration, violated
/// preconditions on public operations.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Server cannot host the requested cores.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal bookkeeping went wrong mid-run.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace greencores
