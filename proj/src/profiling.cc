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

#include "ziptrace/profiling.h"

#include <algorithm>
#include <cmath>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_format.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {
namespace {

uint64_t PairKey(TowerId p, TowerId q) {
  return (static_cast<uint64_t>(p.value) << 32) | q.value;
}

}  // namespace

std::shared_ptr<const TowerUniverse> UniverseOf(const Dataset& training) {
  std::vector<TowerId> towers;
  for (const Trace& t : training.traces()) {
    for (const TowerEvent& e : t.events) towers.push_back(e.tower);
  }
  return std::make_shared<const TowerUniverse>(std::move(towers));
}

TransitionCounts CountSequence(std::span<const TowerId> sequence) {
  TransitionCounts counts;
  for (size_t i = 0; i < sequence.size(); ++i) {
    counts.AddVisit(sequence[i]);
    if (i + 1 < sequence.size()) {
      counts.AddTransition(sequence[i], sequence[i + 1]);
    }
  }
  return counts;
}

namespace {

absl::StatusOr<TransitionMatrix> ProfileTrace(
    const Trace& trace, const ProfileOptions& options,
    std::shared_ptr<const TowerUniverse> universe) {
  std::vector<TowerId> seq =
      TowerSequence(trace.events, options.collapse_repeats);
  return TransitionMatrix::Create(CountSequence(seq), std::move(universe));
}

}  // namespace

absl::StatusOr<TransitionMatrix> ProfileUser(const Dataset& training,
                                             UserId user,
                                             const ProfileOptions& options) {
  const Trace* trace = training.Find(user);
  if (trace == nullptr || trace->events.empty()) {
    return absl::NotFoundError(
        absl::StrFormat("user %d has no training events", user.value));
  }
  return ProfileTrace(*trace, options, UniverseOf(training));
}

absl::StatusOr<UserProfileSet> UserProfileSet::Build(
    const Dataset& training, const ProfileOptions& options) {
  UserProfileSet set;
  set.options_ = options;
  auto universe = UniverseOf(training);
  for (const Trace& trace : training.traces()) {
    if (trace.events.empty()) continue;
    ZT_ASSIGN_OR_RETURN(TransitionMatrix m,
                        ProfileTrace(trace, options, universe));
    set.profiles_.emplace_back(trace.owner, std::move(m));
  }
  std::sort(set.profiles_.begin(), set.profiles_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return set;
}

absl::StatusOr<UserProfileSet> UserProfileSet::FromCounts(
    const std::vector<std::pair<UserId, TransitionCounts>>& counts,
    std::shared_ptr<const TowerUniverse> universe,
    const ProfileOptions& options) {
  UserProfileSet set;
  set.options_ = options;
  for (const auto& [user, c] : counts) {
    ZT_ASSIGN_OR_RETURN(TransitionMatrix m,
                        TransitionMatrix::Create(c, universe));
    set.profiles_.emplace_back(user, std::move(m));
  }
  std::sort(set.profiles_.begin(), set.profiles_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < set.profiles_.size(); ++i) {
    if (set.profiles_[i].first == set.profiles_[i - 1].first) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "duplicate profile for user %d", set.profiles_[i].first.value));
    }
  }
  return set;
}

absl::StatusOr<const TransitionMatrix*> UserProfileSet::Find(
    UserId user) const {
  auto it = std::lower_bound(
      profiles_.begin(), profiles_.end(), user,
      [](const auto& entry, UserId u) { return entry.first < u; });
  if (it == profiles_.end() || it->first != user) {
    return absl::NotFoundError(
        absl::StrFormat("no profile for user %d", user.value));
  }
  return &it->second;
}

absl::StatusOr<Classification> Classify(const UserProfileSet& profiles,
                                        std::span<const TowerId> sequence) {
  if (sequence.empty()) {
    return absl::InvalidArgumentError("cannot classify an empty sequence");
  }
  if (profiles.size() == 0) {
    return absl::FailedPreconditionError("no user profiles");
  }
  std::vector<TowerId> seq(sequence.begin(), sequence.end());
  if (profiles.options().collapse_repeats) {
    seq.erase(std::unique(seq.begin(), seq.end()), seq.end());
  }
  // The likelihood only depends on the multiset of transitions.
  absl::flat_hash_map<uint64_t, uint64_t> multiplicity;
  std::vector<std::pair<TowerId, TowerId>> pairs;
  std::vector<double> weights;
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    auto [it, fresh] = multiplicity.try_emplace(PairKey(seq[i], seq[i + 1]),
                                                pairs.size());
    if (fresh) {
      pairs.emplace_back(seq[i], seq[i + 1]);
      weights.push_back(1.0);
    } else {
      weights[it->second] += 1.0;
    }
  }

  Classification best;
  bool have_best = false;
  for (const auto& [user, m] : profiles.profiles()) {
    double score = m.LogPrior(seq.front());
    for (size_t k = 0; k < pairs.size(); ++k) {
      score += weights[k] * m.LogProbability(pairs[k].first, pairs[k].second);
    }
    if (!have_best ||
        score > best.log_score +
                    kTieTolerance * std::max(1.0, std::abs(best.log_score))) {
      best = {user, score};
      have_best = true;
    }
  }
  return best;
}

absl::StatusOr<Classification> Classify(const UserProfileSet& profiles,
                                        std::span<const TowerEvent> events) {
  std::vector<TowerId> seq = TowerSequence(events, false);
  return Classify(profiles, std::span<const TowerId>(seq));
}

}  // namespace ziptrace
