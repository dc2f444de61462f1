// Copyright 2026 The TopoFit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topofit/manifest.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include <fmt/core.h>

#include "topofit/types.hpp"

namespace topofit {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& key, const std::string& source) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(fmt::format("{}: key '{}' has non-numeric value '{}'", source, key, text));
  }
  return value;
}

}  // namespace

void KeyValues::set(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("= \t\n") != std::string::npos) {
    throw Error(fmt::format("invalid manifest key '{}'", key));
  }
  if (value.find('\n') != std::string::npos) {
    throw Error(fmt::format("manifest value for '{}' spans lines", key));
  }
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

bool KeyValues::has(const std::string& key) const { return find(key).has_value(); }

std::optional<std::string> KeyValues::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const std::string& KeyValues::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw Error(fmt::format("{}: missing key '{}'", source_, key));
}

double KeyValues::get_double(const std::string& key) const {
  return parse_number<double>(get(key), key, source_);
}

long long KeyValues::get_int(const std::string& key) const {
  return parse_number<long long>(get(key), key, source_);
}

unsigned long long KeyValues::get_uint(const std::string& key) const {
  return parse_number<unsigned long long>(get(key), key, source_);
}

void KeyValues::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : entries_) {
    if (!allowed.contains(k)) throw Error(fmt::format("{}: unknown key '{}'", source_, k));
  }
}

std::string KeyValues::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += fmt::format("{} = {}\n", k, v);
  return out;
}

KeyValues KeyValues::parse(std::istream& in, const std::string& source_name) {
  KeyValues kv;
  kv.source_ = source_name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(fmt::format("{}:{}: expected 'key = value'", source_name, line_no));
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw Error(fmt::format("{}:{}: empty key", source_name, line_no));
    if (kv.has(key)) throw Error(fmt::format("{}:{}: duplicate key '{}'", source_name, line_no, key));
    kv.entries_.emplace_back(key, trim(t.substr(eq + 1)));
  }
  return kv;
}

KeyValues KeyValues::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  return parse(in, path.string());
}

void KeyValues::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out << str();
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace topofit
