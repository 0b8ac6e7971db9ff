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

// Behavioural characterisation of users: predictability (Jaccard overlap of
// the tower sets visited before and after a split) and mixing (a rate of
// co-location encounters while dwelling at a tower).

#ifndef ZIPTRACE_METRICS_H_
#define ZIPTRACE_METRICS_H_

#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "ziptrace/trace_model.h"
#include "ziptrace/user_type.h"

namespace ziptrace {

struct TypologyThresholds {
  // Predictable iff jaccard > predictable_above.
  double predictable_above = 0.1;
  // Mixing iff mixing > mixing_above.
  double mixing_above = 4.0;
};

struct BehaviorScores {
  UserId user;
  double jaccard = 0.0;
  double mixing = 0.0;
  UserType type = UserType::kUnpredictableNonMixing;
};

// |A ∩ B| / |A ∪ B| over the distinct towers of each trace. Fails with
// InvalidArgument if either side has no events.
absl::StatusOr<double> JaccardScore(std::span<const TowerEvent> before,
                                    std::span<const TowerEvent> after);

struct MixingOptions {
  // Smallest gap (seconds) used as a denominator; covers coincident
  // instants and encounters exactly at the start of a dwell.
  double min_gap = 1.0;
};

// Per-tower arrival/departure index over a dataset, shared read-only by all
// mixing-score queries.
class CoPresenceIndex {
 public:
  explicit CoPresenceIndex(const Dataset& dataset);

  // Users attached to `tower` at instant t (start <= t < end).
  int AttachedAt(TowerId tower, Seconds t) const;

  struct Instant {
    Seconds time;
    UserId user;
  };
  // Arrival and departure instants at `tower` with from <= time < to, in
  // ascending time (stable for ties).
  std::span<const Instant> InstantsIn(TowerId tower, Seconds from,
                                      Seconds to) const;

 private:
  struct PerTower {
    std::vector<Seconds> starts;  // sorted
    std::vector<Seconds> ends;    // sorted
    std::vector<Instant> instants;
  };
  absl::flat_hash_map<TowerId, PerTower> towers_;
};

// Sum over the user's dwells [s, e) at each tower k of C(τ_j) / (τ_j − τ_{j−1})
// where τ_1 < τ_2 < ... are other users' arrival or departure instants at k
// inside the dwell, τ_0 = s, and C(τ) counts other users attached to k at τ.
// Zero when the user is absent or never shares a tower-time.
double MixingScore(const CoPresenceIndex& index, const Trace& trace,
                   const MixingOptions& options = {});
double MixingScore(const Dataset& dataset, UserId user,
                   const MixingOptions& options = {});

UserType ClassifyType(double jaccard, double mixing,
                      const TypologyThresholds& thresholds = {});

// Scores for users present in both halves. Jaccard compares train vs test
// tower sets; mixing is computed on `mixing_period`.
std::vector<BehaviorScores> ComputeBehaviorScores(
    const Dataset& train, const Dataset& test, const Dataset& mixing_period,
    const TypologyThresholds& thresholds = {},
    const MixingOptions& options = {});

}  // namespace ziptrace

#endif  // ZIPTRACE_METRICS_H_
