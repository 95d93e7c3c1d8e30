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
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace greencores {

/// Flat `key = value` document. `#` starts a comment; blank lines are skipped.
/// Keys are unique; a repeated key is a ValidationError.
class KvDocument {
 public:
  static KvDocument parse(std::istream& in, const std::string& source = "<input>");
  static KvDocument load(const std::filesystem::path& path);

  [[nodiscard]] bool contains(const std::string& key) const { return values_.contains(key); }
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;

  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] long long get_int(const std::string& key, long long fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept {
    return values_;
  }

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
};

/// Strict numeric parsing shared by the file readers; the whole field must be
/// consumed.
std::optional<double> parse_double(std::string_view text);
/// Shortest text that parses back to exactly `v`.
std::string format_double(double v);
std::optional<long long> parse_int(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace greencores
