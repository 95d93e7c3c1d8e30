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

#include "greencores/types.hpp"

namespace greencores {

std::string_view to_string(Criticality c) noexcept {
  return c == Criticality::critical ? "critical" : "best-effort";
}

Criticality parse_criticality(std::string_view text) {
  if (text == "critical") {
    return Criticality::critical;
  }
  if (text == "best-effort") {
    return Criticality::best_effort;
  }
  throw ValidationError("unknown criticality '" + std::string(text) +
                        "' (expected critical or best-effort)");
}

}  // namespace greencores
