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

#include "ziptrace/metrics.h"

#include <algorithm>

#include "absl/container/flat_hash_set.h"

namespace ziptrace {

absl::StatusOr<double> JaccardScore(std::span<const TowerEvent> before,
                                    std::span<const TowerEvent> after) {
  if (before.empty() || after.empty()) {
    return absl::InvalidArgumentError(
        "jaccard score is undefined for an empty trace");
  }
  absl::flat_hash_set<TowerId> a;
  absl::flat_hash_set<TowerId> b;
  for (const TowerEvent& e : before) a.insert(e.tower);
  for (const TowerEvent& e : after) b.insert(e.tower);
  size_t common = 0;
  for (TowerId t : a) common += b.contains(t);
  size_t total = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(total);
}

CoPresenceIndex::CoPresenceIndex(const Dataset& dataset) {
  for (const Trace& trace : dataset.traces()) {
    for (const TowerEvent& e : trace.events) {
      PerTower& pt = towers_[e.tower];
      pt.starts.push_back(e.start);
      pt.ends.push_back(e.end);
      pt.instants.push_back({e.start, trace.owner});
      pt.instants.push_back({e.end, trace.owner});
    }
  }
  for (auto& [tower, pt] : towers_) {
    std::sort(pt.starts.begin(), pt.starts.end());
    std::sort(pt.ends.begin(), pt.ends.end());
    std::stable_sort(pt.instants.begin(), pt.instants.end(),
                     [](const Instant& a, const Instant& b) {
                       return a.time < b.time;
                     });
  }
}

int CoPresenceIndex::AttachedAt(TowerId tower, Seconds t) const {
  auto it = towers_.find(tower);
  if (it == towers_.end()) return 0;
  const PerTower& pt = it->second;
  // start <= t < end  <=>  #(start <= t) - #(end <= t)
  auto started = std::upper_bound(pt.starts.begin(), pt.starts.end(), t) -
                 pt.starts.begin();
  auto ended =
      std::upper_bound(pt.ends.begin(), pt.ends.end(), t) - pt.ends.begin();
  return static_cast<int>(started - ended);
}

std::span<const CoPresenceIndex::Instant> CoPresenceIndex::InstantsIn(
    TowerId tower, Seconds from, Seconds to) const {
  auto it = towers_.find(tower);
  if (it == towers_.end()) return {};
  const std::vector<Instant>& v = it->second.instants;
  auto lo = std::lower_bound(
      v.begin(), v.end(), from,
      [](const Instant& i, Seconds s) { return i.time < s; });
  auto hi = std::lower_bound(
      lo, v.end(), to, [](const Instant& i, Seconds s) { return i.time < s; });
  return {lo, hi};
}

double MixingScore(const CoPresenceIndex& index, const Trace& trace,
                   const MixingOptions& options) {
  double score = 0.0;
  for (const TowerEvent& dwell : trace.events) {
    if (dwell.start >= dwell.end) continue;
    Seconds prev = dwell.start;
    for (const auto& instant :
         index.InstantsIn(dwell.tower, dwell.start, dwell.end)) {
      if (instant.user == trace.owner) continue;
      // The user itself is attached throughout [start, end), so it is
      // always among the attached count here.
      int others = index.AttachedAt(dwell.tower, instant.time) - 1;
      double gap = std::max(static_cast<double>(instant.time - prev),
                            options.min_gap);
      score += static_cast<double>(others) / gap;
      prev = instant.time;
    }
  }
  return score;
}

double MixingScore(const Dataset& dataset, UserId user,
                   const MixingOptions& options) {
  const Trace* trace = dataset.Find(user);
  if (trace == nullptr) return 0.0;
  CoPresenceIndex index(dataset);
  return MixingScore(index, *trace, options);
}

UserType ClassifyType(double jaccard, double mixing,
                      const TypologyThresholds& thresholds) {
  return MakeUserType(jaccard > thresholds.predictable_above,
                      mixing > thresholds.mixing_above);
}

std::vector<BehaviorScores> ComputeBehaviorScores(
    const Dataset& train, const Dataset& test, const Dataset& mixing_period,
    const TypologyThresholds& thresholds, const MixingOptions& options) {
  CoPresenceIndex index(mixing_period);
  std::vector<BehaviorScores> out;
  for (const Trace& before : train.traces()) {
    const Trace* after = test.Find(before.owner);
    if (after == nullptr) continue;
    auto jaccard = JaccardScore(before.events, after->events);
    if (!jaccard.ok()) continue;
    BehaviorScores s;
    s.user = before.owner;
    s.jaccard = *jaccard;
    const Trace* own = mixing_period.Find(before.owner);
    s.mixing = own == nullptr ? 0.0 : MixingScore(index, *own, options);
    s.type = ClassifyType(s.jaccard, s.mixing, thresholds);
    out.push_back(s);
  }
  return out;
}

}  // namespace ziptrace
