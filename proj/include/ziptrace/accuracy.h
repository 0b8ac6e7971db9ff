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

// Scoring attributions against ground truth.

#ifndef ZIPTRACE_ACCURACY_H_
#define ZIPTRACE_ACCURACY_H_

#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "ziptrace/linking.h"
#include "ziptrace/trace_io.h"
#include "ziptrace/user_type.h"

namespace ziptrace {

struct UserAccuracy {
  UserId user;
  int evaluated = 0;
  int correct = 0;
  double accuracy() const {
    return evaluated == 0 ? 0.0 : static_cast<double>(correct) / evaluated;
  }
};

// Per-user proportions, ascending by user. The user of an attribution is the
// true owner of its pseudonym. NotFound if a pseudonym is missing from
// `truth`.
absl::StatusOr<std::vector<UserAccuracy>> EvaluateAccuracy(
    std::span<const Attribution> attributions, const TruthSidecar& truth);

struct MeanWithCi {
  int n = 0;
  double mean = 0.0;
  // 95% half-width: Student t for n < 30, normal above; 0 for n < 2.
  double ci95_halfwidth = 0.0;
};

MeanWithCi Summarize(std::span<const double> values);

// Mean accuracy per user type over users found in `types`; types without
// users are absent from the result.
absl::flat_hash_map<UserType, MeanWithCi> SummarizeByType(
    std::span<const UserAccuracy> per_user,
    const absl::flat_hash_map<UserId, UserType>& types);

}  // namespace ziptrace

#endif  // ZIPTRACE_ACCURACY_H_
