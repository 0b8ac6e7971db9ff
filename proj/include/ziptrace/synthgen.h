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

// Synthetic tower-attachment populations.
//
// Each user walks a personal first-order Markov chain over tower ids: with
// probability equal to its regularity it steps to the next tower of a
// favourite cycle, otherwise it roams inside its current region or to one of
// a small set of shared hub towers. Predictable users keep one region for the
// whole run; unpredictable users may relocate to a fresh region at every day
// boundary. Mixing users are pulled toward hubs, which is where co-location
// (and therefore identifier mixing) happens.
//
// Dwell times are exponential with mean `mean_dwell`, rounded to whole
// seconds with a floor of one second. The dwell law is a free modelling
// choice, not something the attack or the defence depends on.

#ifndef ZIPTRACE_SYNTHGEN_H_
#define ZIPTRACE_SYNTHGEN_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ziptrace/key_value.h"
#include "ziptrace/trace_io.h"
#include "ziptrace/trace_model.h"
#include "ziptrace/user_type.h"

namespace ziptrace {

// Default typology mix: P/M 18%, nP/M 26%, P/nM 30%, nP/nM 26%.
inline constexpr TypeMix kObservedTypeMix = {0.18, 0.26, 0.30, 0.26};

inline constexpr Seconds kSecondsPerDay = 86400;

struct SynthConfig {
  int n_users = 150;
  int n_towers = 4000;
  Seconds duration = 30 * kSecondsPerDay;
  // Probability a step follows the favourite cycle (route regularity).
  double home_bias = 0.9;
  // Fraction of towers that are shared high-traffic hubs.
  double hub_fraction = 0.0025;
  uint64_t seed = 1;
  double mean_dwell = 600.0;
  TypeMix type_mix = kObservedTypeMix;

  absl::Status Validate() const;
};

// Reads `n_users`, `n_towers`, `duration`, `home_bias`, `hub_fraction`,
// `seed`, `mean_dwell` and `mix_pm`/`mix_npm`/`mix_pnm`/`mix_npnm`, each
// optionally behind `prefix`. Missing keys keep their defaults.
absl::StatusOr<SynthConfig> SynthConfigFromKeyValue(const KeyValueConfig& kv,
                                                    const std::string& prefix);

// Target fractions of the four user types that shape the population.
TypeMix TypologyTargets(const SynthConfig& cfg);

struct SyntheticPopulation {
  Dataset dataset;
  // Type each user was generated to exhibit, ordered by user id.
  std::vector<UserType> assigned;
};

// Deterministic in `cfg.seed`. Users are 0..n_users-1, towers
// 0..n_towers-1; every trace covers [0, duration) without gaps.
absl::StatusOr<SyntheticPopulation> GeneratePopulation(const SynthConfig& cfg);
absl::StatusOr<Dataset> Generate(const SynthConfig& cfg);

// Placeholder call/screen activity: Poisson arrivals over each user's span
// with exponential durations (whole seconds, at least 1).
struct BusyConfig {
  double arrivals_per_day = 8.0;
  double mean_duration = 180.0;
  uint64_t seed = 1;
};

absl::StatusOr<BusyIntervals> GenerateBusyIntervals(const Dataset& dataset,
                                                    const BusyConfig& cfg);

}  // namespace ziptrace

#endif  // ZIPTRACE_SYNTHGEN_H_
