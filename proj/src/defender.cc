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

#include "ziptrace/defender.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "absl/strings/str_format.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {
namespace {

uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

bool InBusy(std::span<const TimeInterval> busy, Seconds t) {
  auto it = std::upper_bound(
      busy.begin(), busy.end(), t,
      [](Seconds v, const TimeInterval& iv) { return v < iv.start; });
  if (it == busy.begin()) return false;
  return std::prev(it)->Contains(t);
}

std::mt19937_64 TraceStream(uint64_t seed, UserId owner) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32), owner.value,
                    0x6f66666cu};
  return std::mt19937_64(seq);
}

}  // namespace

absl::Status RenewalPolicy::Validate() const {
  if (!(utility >= 0.0 && utility <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("utility %g outside [0, 1]", utility));
  }
  if (max_off_time <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("max_off_time must be > 0, got %d", max_off_time));
  }
  return absl::OkStatus();
}

double CooldownSeconds(double off_time, double utility, CooldownRule rule) {
  switch (rule) {
    case CooldownRule::kUtilityRatio:
      if (utility >= 1.0) return std::numeric_limits<double>::infinity();
      return off_time * utility / (1.0 - utility);
    case CooldownRule::kLiteralProduct:
      return off_time * utility;
  }
  return 0.0;
}

double UtilityLedger::RealizedUtility() const {
  if (total_time == 0) return 1.0;
  return 1.0 - static_cast<double>(offline_time) /
                   static_cast<double>(total_time);
}

double UtilityLedger::MeanCooldown() const {
  return renewals == 0 ? 0.0 : cooldown_sum / renewals;
}

PseudonymIssuer::PseudonymIssuer(uint64_t key) : key_(Mix64(key ^ 0x5a17)) {}

PseudonymId PseudonymIssuer::Next() {
  uint64_t n = counter_.fetch_add(1, std::memory_order_relaxed);
  // xor and Mix64 are both bijections, so distinct counters give distinct ids.
  return PseudonymId(Mix64(n ^ key_) ^ (key_ >> 1));
}

PseudonymId FreshPseudonym() {
  static PseudonymIssuer* issuer = [] {
    std::random_device rd;
    uint64_t key = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    return new PseudonymIssuer(key);
  }();
  return issuer->Next();
}

absl::StatusOr<AnonymizeResult> Anonymize(const Trace& trace,
                                          const RenewalPolicy& policy,
                                          PseudonymIssuer& issuer,
                                          std::span<const TimeInterval> busy) {
  ZT_RETURN_IF_ERROR(policy.Validate());
  const std::vector<TowerEvent>& events = trace.events;
  AnonymizeResult result;
  UtilityLedger& ledger = result.ledger;
  ledger.total_time = AttachedSeconds(events);
  if (events.empty()) return result;

  if (policy.utility >= 1.0) {
    result.fragments.push_back({{issuer.Next(), events}, trace.owner});
    return result;
  }

  // Renewal schedule.
  std::mt19937_64 rng = TraceStream(policy.rng_seed, trace.owner);
  std::uniform_int_distribution<Seconds> draw_off(1, policy.max_off_time);
  std::vector<TimeInterval>& windows = ledger.offline_windows;
  Seconds resume = events.front().start;
  Seconds cooldown_until = std::numeric_limits<Seconds>::min();
  for (size_t i = 1; i < events.size(); ++i) {
    if (events[i].tower == events[i - 1].tower) continue;
    const Seconds t = events[i].start;
    if (t <= resume) continue;
    if (t < cooldown_until) {
      ++ledger.skipped_in_cooldown;
      continue;
    }
    if (InBusy(busy, t)) {
      ++ledger.deferred_busy;
      continue;
    }
    const Seconds off = draw_off(rng);
    windows.push_back({t, t + off});
    resume = t + off;
    const double cooldown =
        CooldownSeconds(static_cast<double>(off), policy.utility,
                        policy.cooldown_rule);
    ledger.cooldown_sum += cooldown;
    cooldown_until = resume + static_cast<Seconds>(std::ceil(cooldown - 1e-9));
    ++ledger.renewals;
  }

  // Cut the events: fragment k holds what lies between windows k-1 and k.
  std::vector<std::vector<TowerEvent>> pieces(windows.size() + 1);
  size_t w = 0;
  for (const TowerEvent& e : events) {
    Seconds cur = e.start;
    while (w < windows.size() && windows[w].end <= cur) ++w;
    if (e.start == e.end) {
      if (w < windows.size() && windows[w].Contains(cur)) continue;
      pieces[w].push_back(e);
      continue;
    }
    while (cur < e.end) {
      while (w < windows.size() && windows[w].end <= cur) ++w;
      if (w < windows.size() && windows[w].start <= cur) {
        Seconds stop = std::min(e.end, windows[w].end);
        ledger.offline_time += stop - cur;
        cur = stop;
        continue;
      }
      Seconds stop =
          w < windows.size() ? std::min(e.end, windows[w].start) : e.end;
      pieces[w].push_back({e.tower, cur, stop});
      cur = stop;
    }
  }
  for (std::vector<TowerEvent>& p : pieces) {
    if (p.empty()) continue;
    result.fragments.push_back({{issuer.Next(), std::move(p)}, trace.owner});
  }
  return result;
}

}  // namespace ziptrace
