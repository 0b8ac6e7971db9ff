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

#include "ziptrace/trace_model.h"

#include <algorithm>
#include <map>

#include "absl/strings/str_format.h"

namespace ziptrace {

absl::Status ValidateEvents(std::span<const TowerEvent> events) {
  for (size_t i = 0; i < events.size(); ++i) {
    const TowerEvent& e = events[i];
    if (e.start > e.end) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "event %d at tower %d ends (%d) before it starts (%d)", i,
          e.tower.value, e.end, e.start));
    }
    if (i == 0) continue;
    const TowerEvent& prev = events[i - 1];
    if (prev.start > e.start) {
      return absl::InvalidArgumentError(
          absl::StrFormat("event %d starts before event %d", i, i - 1));
    }
    if (prev.end > e.start) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "events overlap: [%d,%d) at tower %d and [%d,%d) at tower %d",
          prev.start, prev.end, prev.tower.value, e.start, e.end,
          e.tower.value));
    }
  }
  return absl::OkStatus();
}

Seconds AttachedSeconds(std::span<const TowerEvent> events) {
  Seconds total = 0;
  for (const TowerEvent& e : events) total += e.duration();
  return total;
}

std::vector<TowerId> TowerSequence(std::span<const TowerEvent> events,
                                   bool collapse_repeats) {
  std::vector<TowerId> out;
  out.reserve(events.size());
  for (const TowerEvent& e : events) {
    if (collapse_repeats && !out.empty() && out.back() == e.tower) continue;
    out.push_back(e.tower);
  }
  return out;
}

absl::StatusOr<Dataset> Dataset::Create(std::vector<Trace> traces) {
  std::map<UserId, Trace> by_user;
  for (Trace& t : traces) {
    auto [it, inserted] = by_user.try_emplace(t.owner);
    if (inserted) {
      it->second = std::move(t);
    } else {
      it->second.events.insert(it->second.events.end(), t.events.begin(),
                               t.events.end());
    }
  }
  std::vector<Trace> merged;
  merged.reserve(by_user.size());
  for (auto& [user, trace] : by_user) {
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const TowerEvent& a, const TowerEvent& b) {
                       if (a.start != b.start) return a.start < b.start;
                       return a.end < b.end;
                     });
    absl::Status s = ValidateEvents(trace.events);
    if (!s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("user %d: %s", user.value, s.message()));
    }
    merged.push_back(std::move(trace));
  }
  return Dataset(std::move(merged));
}

std::vector<UserId> Dataset::users() const {
  std::vector<UserId> out;
  out.reserve(traces_.size());
  for (const Trace& t : traces_) out.push_back(t.owner);
  return out;
}

const Trace* Dataset::Find(UserId user) const {
  auto it = std::lower_bound(
      traces_.begin(), traces_.end(), user,
      [](const Trace& t, UserId u) { return t.owner < u; });
  if (it == traces_.end() || it->owner != user) return nullptr;
  return &*it;
}

std::optional<std::pair<Seconds, Seconds>> Dataset::TimeSpan() const {
  std::optional<std::pair<Seconds, Seconds>> span;
  for (const Trace& t : traces_) {
    if (t.events.empty()) continue;
    Seconds lo = t.events.front().start;
    Seconds hi = 0;
    for (const TowerEvent& e : t.events) hi = std::max(hi, e.end);
    if (!span) {
      span = {lo, hi};
    } else {
      span->first = std::min(span->first, lo);
      span->second = std::max(span->second, hi);
    }
  }
  return span;
}

Seconds Dataset::AttachedSeconds() const {
  Seconds total = 0;
  for (const Trace& t : traces_) total += ziptrace::AttachedSeconds(t.events);
  return total;
}

std::vector<TowerEvent> ClipEvents(std::span<const TowerEvent> events,
                                   Seconds from, Seconds to) {
  std::vector<TowerEvent> out;
  for (const TowerEvent& e : events) {
    if (e.start >= to) break;
    if (e.end <= from && !(e.start == e.end && e.start >= from)) continue;
    out.push_back({e.tower, std::max(e.start, from), std::min(e.end, to)});
  }
  return out;
}

DatasetSplit SplitByPeriod(const Dataset& dataset, Seconds boundary) {
  std::vector<Trace> train;
  std::vector<Trace> test;
  for (const Trace& t : dataset.traces()) {
    Trace before{t.owner, {}};
    Trace after{t.owner, {}};
    for (const TowerEvent& e : t.events) {
      if (e.start >= boundary) {
        after.events.push_back(e);
      } else if (e.end <= boundary) {
        before.events.push_back(e);
      } else {
        before.events.push_back({e.tower, e.start, boundary});
        after.events.push_back({e.tower, boundary, e.end});
      }
    }
    if (!before.events.empty()) train.push_back(std::move(before));
    if (!after.events.empty()) test.push_back(std::move(after));
  }
  // Halves of a valid dataset are valid.
  return {*Dataset::Create(std::move(train)), *Dataset::Create(std::move(test))};
}

}  // namespace ziptrace
