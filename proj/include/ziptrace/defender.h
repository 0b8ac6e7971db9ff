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

// Identifier renewal on tower switches.
//
// The device waits until it attaches to a new tower and its cooldown has
// expired, detaches for a random offline period, and reattaches under a
// fresh pseudonym. The cooldown that follows is sized so that the offline
// fraction never exceeds 1 - utility:
//
//   cooldown = off_time * utility / (1 - utility)
//
// e.g. 30 s offline at utility 0.95 buys 570 s online, a 10 minute identity.

#ifndef ZIPTRACE_DEFENDER_H_
#define ZIPTRACE_DEFENDER_H_

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ziptrace/trace_model.h"

namespace ziptrace {

enum class CooldownRule {
  // off_time * utility / (1 - utility); keeps realized utility >= target.
  kUtilityRatio,
  // off_time * utility; kept for sensitivity analysis only.
  kLiteralProduct,
};

struct RenewalPolicy {
  // Minimum fraction of attached time that must stay online, in [0, 1].
  double utility = 0.95;
  // Offline periods are drawn uniformly from whole seconds in
  // [1, max_off_time].
  Seconds max_off_time = 30;
  uint64_t rng_seed = 0;
  CooldownRule cooldown_rule = CooldownRule::kUtilityRatio;

  absl::Status Validate() const;
};

// Seconds of cooldown earned by an offline period of `off_time` seconds.
double CooldownSeconds(double off_time, double utility,
                       CooldownRule rule = CooldownRule::kUtilityRatio);

struct UtilityLedger {
  Seconds total_time = 0;    // attached seconds in the original trace
  Seconds offline_time = 0;  // attached seconds deleted by offline windows
  int renewals = 0;
  // Tower switches that could not trigger a renewal.
  int skipped_in_cooldown = 0;
  int deferred_busy = 0;
  double cooldown_sum = 0.0;
  std::vector<TimeInterval> offline_windows;

  double RealizedUtility() const;
  double MeanCooldown() const;
};

// Keyed bijection over a 64-bit counter: ids from one issuer never repeat
// and carry no visible order. Thread-safe.
class PseudonymIssuer {
 public:
  explicit PseudonymIssuer(uint64_t key);
  PseudonymId Next();

 private:
  uint64_t key_;
  std::atomic<uint64_t> counter_{0};
};

// Process-wide issuer keyed from std::random_device.
PseudonymId FreshPseudonym();

struct AnonymizeResult {
  std::vector<PseudonymousTrace> fragments;
  UtilityLedger ledger;
};

// Splits `trace` into pseudonymous fragments. Offline draws come from a
// stream derived from (policy.rng_seed, trace.owner). `busy` (sorted,
// disjoint) defers renewals that would fall inside an interval to the first
// switch after it. utility == 1 returns the trace as a single fragment.
absl::StatusOr<AnonymizeResult> Anonymize(
    const Trace& trace, const RenewalPolicy& policy, PseudonymIssuer& issuer,
    std::span<const TimeInterval> busy = {});

}  // namespace ziptrace

#endif  // ZIPTRACE_DEFENDER_H_
