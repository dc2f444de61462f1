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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace topofit {

/// Ordered `key = value` document (UTF-8, LF line endings). Keys keep
/// insertion order so output is stable; duplicate keys are rejected on
/// parse. Lines starting with '#' are comments.
class KeyValues {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  /// Throws naming the key and the document when missing.
  const std::string& get(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;

  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  unsigned long long get_uint(const std::string& key) const;

  /// Throws on the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string str() const;

  static KeyValues parse(std::istream& in, const std::string& source_name = "<stream>");
  static KeyValues read(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string source_ = "<memory>";
};

}  // namespace topofit
