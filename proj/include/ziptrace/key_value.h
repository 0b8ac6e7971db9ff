// Copyright 2026 The ziptrace Authors
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

#ifndef ZIPTRACE_KEY_VALUE_H_
#define ZIPTRACE_KEY_VALUE_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ziptrace {

// Flat `key = value` text config. `#` starts a comment; blank lines are
// ignored; a repeated key is an error. Getters record which keys were read
// so callers can reject typos with `CheckAllConsumed`.
class KeyValueConfig {
 public:
  static absl::StatusOr<KeyValueConfig> Parse(std::istream& in);
  static absl::StatusOr<KeyValueConfig> FromFile(const std::string& path);

  bool Has(const std::string& key) const;
  std::optional<std::string> GetString(const std::string& key) const;
  absl::StatusOr<double> GetDouble(const std::string& key,
                                   double fallback) const;
  absl::StatusOr<int64_t> GetInt(const std::string& key,
                                 int64_t fallback) const;
  absl::StatusOr<std::vector<double>> GetDoubleList(
      const std::string& key, std::vector<double> fallback) const;
  absl::StatusOr<std::vector<int64_t>> GetIntList(
      const std::string& key, std::vector<int64_t> fallback) const;

  absl::Status CheckAllConsumed() const;

  // Sorted `key=value` lines; stable across key order and whitespace.
  std::string Canonical() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace ziptrace

#endif  // ZIPTRACE_KEY_VALUE_H_
