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

#include "ziptrace/accuracy.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "absl/strings/str_format.h"

namespace ziptrace {

absl::StatusOr<std::vector<UserAccuracy>> EvaluateAccuracy(
    std::span<const Attribution> attributions, const TruthSidecar& truth) {
  std::map<UserId, UserAccuracy> by_user;
  for (const Attribution& a : attributions) {
    std::optional<UserId> owner = truth.Lookup(a.pseudonym);
    if (!owner) {
      return absl::NotFoundError(absl::StrFormat(
          "pseudonym %d missing from truth sidecar", a.pseudonym.raw()));
    }
    UserAccuracy& ua = by_user[*owner];
    ua.user = *owner;
    ++ua.evaluated;
    ua.correct += a.predicted == *owner;
  }
  std::vector<UserAccuracy> out;
  out.reserve(by_user.size());
  for (auto& [u, ua] : by_user) out.push_back(ua);
  return out;
}

MeanWithCi Summarize(std::span<const double> values) {
  MeanWithCi s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  const double sem = std::sqrt(ss / (s.n - 1)) / std::sqrt(s.n);
  double z = 1.959963984540054;
  if (s.n < 30) {
    boost::math::students_t dist(s.n - 1);
    z = boost::math::quantile(boost::math::complement(dist, 0.025));
  }
  s.ci95_halfwidth = z * sem;
  return s;
}

absl::flat_hash_map<UserType, MeanWithCi> SummarizeByType(
    std::span<const UserAccuracy> per_user,
    const absl::flat_hash_map<UserId, UserType>& types) {
  absl::flat_hash_map<UserType, std::vector<double>> grouped;
  for (const UserAccuracy& ua : per_user) {
    auto it = types.find(ua.user);
    if (it == types.end() || ua.evaluated == 0) continue;
    grouped[it->second].push_back(ua.accuracy());
  }
  absl::flat_hash_map<UserType, MeanWithCi> out;
  for (const auto& [type, values] : grouped) out[type] = Summarize(values);
  return out;
}

}  // namespace ziptrace
