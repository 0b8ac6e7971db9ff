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

#include "ziptrace/key_value.h"

#include <fstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace ziptrace {

absl::StatusOr<KeyValueConfig> KeyValueConfig::Parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    absl::string_view text = line;
    if (size_t hash = text.find('#'); hash != absl::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = absl::StripAsciiWhitespace(text);
    if (text.empty()) continue;
    size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected key=value", line_no));
    }
    std::string key(absl::StripAsciiWhitespace(text.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(text.substr(eq + 1)));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: empty key", line_no));
    }
    if (!cfg.values_.emplace(key, value).second) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: duplicate key '%s'", line_no, key));
    }
  }
  return cfg;
}

absl::StatusOr<KeyValueConfig> KeyValueConfig::FromFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError("cannot open " + path);
  auto cfg = Parse(in);
  if (!cfg.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, cfg.status().message()));
  }
  return cfg;
}

bool KeyValueConfig::Has(const std::string& key) const {
  return values_.contains(key);
}

std::optional<std::string> KeyValueConfig::GetString(
    const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  consumed_.insert(key);
  return it->second;
}

absl::StatusOr<double> KeyValueConfig::GetDouble(const std::string& key,
                                                 double fallback) const {
  auto v = GetString(key);
  if (!v) return fallback;
  double out;
  if (!absl::SimpleAtod(*v, &out)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: '%s' is not a number", key, *v));
  }
  return out;
}

absl::StatusOr<int64_t> KeyValueConfig::GetInt(const std::string& key,
                                               int64_t fallback) const {
  auto v = GetString(key);
  if (!v) return fallback;
  int64_t out;
  if (!absl::SimpleAtoi(*v, &out)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: '%s' is not an integer", key, *v));
  }
  return out;
}

absl::StatusOr<std::vector<double>> KeyValueConfig::GetDoubleList(
    const std::string& key, std::vector<double> fallback) const {
  auto v = GetString(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(*v, ',', absl::SkipWhitespace())) {
    double d;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(part), &d)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: '%s' is not a number", key, part));
    }
    out.push_back(d);
  }
  return out;
}

absl::StatusOr<std::vector<int64_t>> KeyValueConfig::GetIntList(
    const std::string& key, std::vector<int64_t> fallback) const {
  auto v = GetString(key);
  if (!v) return fallback;
  std::vector<int64_t> out;
  for (absl::string_view part : absl::StrSplit(*v, ',', absl::SkipWhitespace())) {
    int64_t i;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(part), &i)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: '%s' is not an integer", key, part));
    }
    out.push_back(i);
  }
  return out;
}

absl::Status KeyValueConfig::CheckAllConsumed() const {
  std::vector<std::string> unknown;
  for (const auto& [k, v] : values_) {
    if (!consumed_.contains(k)) unknown.push_back(k);
  }
  if (unknown.empty()) return absl::OkStatus();
  return absl::InvalidArgumentError("unknown config keys: " +
                                    absl::StrJoin(unknown, ", "));
}

std::string KeyValueConfig::Canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) absl::StrAppend(&out, k, "=", v, "\n");
  return out;
}

}  // namespace ziptrace
