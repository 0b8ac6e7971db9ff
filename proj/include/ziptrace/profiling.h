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

// Location profiling: one Markov model per training user, and maximum
// likelihood attribution of a tower sequence to a user.

#ifndef ZIPTRACE_PROFILING_H_
#define ZIPTRACE_PROFILING_H_

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ziptrace/trace_model.h"
#include "ziptrace/transition_matrix.h"

namespace ziptrace {

struct ProfileOptions {
  // Collapse runs of the same tower, both in training and in queries.
  bool collapse_repeats = true;
};

// Every tower observed in `training`.
std::shared_ptr<const TowerUniverse> UniverseOf(const Dataset& training);

// Visit and transition counts of one event sequence.
TransitionCounts CountSequence(std::span<const TowerId> sequence);

// NotFound if `user` has no events in `training`.
absl::StatusOr<TransitionMatrix> ProfileUser(
    const Dataset& training, UserId user, const ProfileOptions& options = {});

class UserProfileSet {
 public:
  UserProfileSet() = default;
  static absl::StatusOr<UserProfileSet> Build(
      const Dataset& training, const ProfileOptions& options = {});
  // Profiles from precomputed counts over a shared universe. Duplicate
  // users are rejected.
  static absl::StatusOr<UserProfileSet> FromCounts(
      const std::vector<std::pair<UserId, TransitionCounts>>& counts,
      std::shared_ptr<const TowerUniverse> universe,
      const ProfileOptions& options = {});

  // NotFound for users without a profile.
  absl::StatusOr<const TransitionMatrix*> Find(UserId user) const;
  // Ascending by user.
  const std::vector<std::pair<UserId, TransitionMatrix>>& profiles() const {
    return profiles_;
  }
  const ProfileOptions& options() const { return options_; }
  size_t size() const { return profiles_.size(); }

 private:
  std::vector<std::pair<UserId, TransitionMatrix>> profiles_;
  ProfileOptions options_;
};

struct Classification {
  UserId user;
  double log_score = 0.0;
};

// Scores below best + kTieTolerance * max(1, |best|) count as ties with the
// best; ties go to the smallest user id.
inline constexpr double kTieTolerance = 1e-9;

// argmax_u log prior_u(s_0) + sum_i log T_u[s_i, s_{i+1}].
// InvalidArgument for an empty sequence, FailedPrecondition for an empty
// profile set.
absl::StatusOr<Classification> Classify(const UserProfileSet& profiles,
                                        std::span<const TowerId> sequence);
absl::StatusOr<Classification> Classify(const UserProfileSet& profiles,
                                        std::span<const TowerEvent> events);

}  // namespace ziptrace

#endif  // ZIPTRACE_PROFILING_H_
