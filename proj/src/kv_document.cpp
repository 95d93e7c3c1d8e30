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

#include "greencores/kv_document.hpp"

#include <charconv>
#include <fstream>

#include "greencores/types.hpp"

namespace greencores {

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) {
    return std::nullopt;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<long long> parse_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) {
    return std::nullopt;
  }
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

KvDocument KvDocument::parse(std::istream& in, const std::string& source) {
  KvDocument doc;
  doc.source_ = source;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!doc.values_.emplace(key, value).second) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                            "'");
    }
  }
  return doc;
}

KvDocument KvDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open " + path.string());
  }
  return parse(in, path.string());
}

std::optional<std::string> KvDocument::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) {
    return it->second;
  }
  return std::nullopt;
}

double KvDocument::get_double(const std::string& key, double fallback) const {
  const auto raw = get(key);
  if (!raw) {
    return fallback;
  }
  const auto v = parse_double(*raw);
  if (!v) {
    throw ValidationError(source_ + ": key '" + key + "' is not a number: " + *raw);
  }
  return *v;
}

long long KvDocument::get_int(const std::string& key, long long fallback) const {
  const auto raw = get(key);
  if (!raw) {
    return fallback;
  }
  const auto v = parse_int(*raw);
  if (!v) {
    throw ValidationError(source_ + ": key '" + key + "' is not an integer: " + *raw);
  }
  return *v;
}

bool KvDocument::get_bool(const std::string& key, bool fallback) const {
  const auto raw = get(key);
  if (!raw) {
    return fallback;
  }
  if (*raw == "true" || *raw == "1" || *raw == "yes" || *raw == "on") {
    return true;
  }
  if (*raw == "false" || *raw == "0" || *raw == "no" || *raw == "off") {
    return false;
  }
  throw ValidationError(source_ + ": key '" + key + "' is not a boolean: " + *raw);
}

std::string KvDocument::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace greencores
