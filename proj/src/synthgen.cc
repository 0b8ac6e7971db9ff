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

#include "ziptrace/synthgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/strings/str_format.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {
namespace {

// Shape constants. Regions are the non-hub towers a user frequents; hub sets
// are the hubs it may visit. Unpredictable users get wider regions and
// a regularity of home_bias^kUnpredictableExponent.
constexpr int kPredictableRegion = 6;
constexpr int kUnpredictableRegion = 20;
constexpr int kPredictableHubs = 3;
constexpr int kUnpredictableHubs = 1;
constexpr double kUnpredictableExponent = 8.0;
// Hub pull of mixing users is 1 - 0.5^(hub_fraction / reference): one half
// at the default fraction, rising smoothly towards 1.
constexpr double kReferenceHubFraction = 0.0025;
// Non-mixing users still feel the hubs, just very weakly.
constexpr double kNonMixingPullRatio = 1.0 / 5000.0;

std::vector<TowerId> DrawDistinct(const std::vector<TowerId>& pool, int k,
                                  std::mt19937_64& rng) {
  k = std::min<int>(k, pool.size());
  std::vector<TowerId> out;
  out.reserve(k);
  if (2 * k >= static_cast<int>(pool.size())) {
    std::sample(pool.begin(), pool.end(), std::back_inserter(out), k, rng);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  }
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  while (static_cast<int>(out.size()) < k) {
    TowerId t = pool[pick(rng)];
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

// k distinct hubs, drawn with weight 1 / (rank + 1)^2. Ranks follow `hubs`
// order, so adding hubs leaves the popular ones popular.
std::vector<TowerId> DrawPopularHubs(const std::vector<TowerId>& hubs, int k,
                                     std::mt19937_64& rng) {
  std::vector<double> weights(hubs.size());
  for (size_t r = 0; r < hubs.size(); ++r) weights[r] = 1.0 / ((r + 1.0) * (r + 1.0));
  std::vector<TowerId> out;
  k = std::min<int>(k, hubs.size());
  while (static_cast<int>(out.size()) < k) {
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    size_t r = pick(rng);
    out.push_back(hubs[r]);
    weights[r] = 0.0;
  }
  return out;
}

struct Territory {
  std::vector<TowerId> region;
  std::vector<TowerId> hubs;
  std::vector<TowerId> cycle;
};

class UserWalker {
 public:
  UserWalker(const SynthConfig& cfg, const std::vector<TowerId>& ordinary,
             const std::vector<TowerId>& hubs, UserType type, uint64_t seed)
      : cfg_(cfg), ordinary_(ordinary), hubs_(hubs), type_(type), rng_(seed) {
    const bool predictable = IsPredictable(type);
    regularity_ = predictable
                      ? cfg.home_bias
                      : std::pow(cfg.home_bias, kUnpredictableExponent);
    double pull =
        1.0 - std::pow(0.5, cfg.hub_fraction / kReferenceHubFraction);
    hub_pull_ = hubs.empty() ? 0.0
                : IsMixing(type) ? pull
                                 : pull * kNonMixingPullRatio;
  }

  Trace Walk(UserId user) {
    Trace trace{user, {}};
    Relocate();
    const bool predictable = IsPredictable(type_);
    std::exponential_distribution<double> dwell(1.0 / cfg_.mean_dwell);
    std::bernoulli_distribution follow(regularity_);
    std::bernoulli_distribution relocate(1.0 - regularity_);
    std::bernoulli_distribution to_hub(hub_pull_);

    size_t pos = 0;
    TowerId cur = here_.cycle[0];
    Seconds t = 0;
    Seconds next_day = kSecondsPerDay;
    while (t < cfg_.duration) {
      Seconds d = std::max<Seconds>(1, std::llround(dwell(rng_)));
      Seconds end = std::min(t + d, cfg_.duration);
      trace.events.push_back({cur, t, end});
      t = end;

      bool moved_region = false;
      while (t >= next_day) {
        next_day += kSecondsPerDay;
        if (!predictable && relocate(rng_)) moved_region = true;
      }
      TowerId next;
      if (moved_region) {
        Relocate();
        pos = 0;
        next = here_.cycle[0];
      } else if (follow(rng_)) {
        pos = (pos + 1) % here_.cycle.size();
        next = here_.cycle[pos];
      } else if (!here_.hubs.empty() && to_hub(rng_)) {
        next = Pick(here_.hubs);
      } else {
        next = Pick(here_.region);
      }
      // No self-transitions: fall through to the next cycle stop.
      for (size_t guard = 0; next == cur && guard < 2; ++guard) {
        pos = (pos + 1) % here_.cycle.size();
        next = here_.cycle[pos];
      }
      cur = next;
    }
    return trace;
  }

 private:
  TowerId Pick(const std::vector<TowerId>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng_)];
  }

  void Relocate() {
    const bool predictable = IsPredictable(type_);
    const std::vector<TowerId>& pool = ordinary_.empty() ? hubs_ : ordinary_;
    here_.region = DrawDistinct(
        pool, predictable ? kPredictableRegion : kUnpredictableRegion, rng_);
    here_.hubs = hub_pull_ > 0.0
                     ? DrawPopularHubs(hubs_,
                                       predictable ? kPredictableHubs
                                                   : kUnpredictableHubs,
                                       rng_)
                     : std::vector<TowerId>{};

    int length = std::uniform_int_distribution<int>(3, 5)(rng_);
    std::bernoulli_distribution hub_slot(hub_pull_);
    std::vector<TowerId> cycle;
    size_t next_region = 0;
    size_t next_hub = 0;
    for (int i = 0; i < length; ++i) {
      if (next_hub < here_.hubs.size() && hub_slot(rng_)) {
        cycle.push_back(here_.hubs[next_hub++]);
      } else if (next_region < here_.region.size()) {
        cycle.push_back(here_.region[next_region++]);
      } else if (next_hub < here_.hubs.size()) {
        cycle.push_back(here_.hubs[next_hub++]);
      }
    }
    if (cycle.size() < 2) {
      // Tiny tower sets: borrow from anywhere so the cycle has two stops.
      for (const auto* p : {&ordinary_, &hubs_}) {
        for (TowerId t : *p) {
          if (cycle.size() >= 2) break;
          if (std::find(cycle.begin(), cycle.end(), t) == cycle.end()) {
            cycle.push_back(t);
          }
        }
      }
    }
    here_.cycle = std::move(cycle);
    if (here_.region.empty()) here_.region = here_.cycle;
  }

  const SynthConfig& cfg_;
  const std::vector<TowerId>& ordinary_;
  const std::vector<TowerId>& hubs_;
  UserType type_;
  std::mt19937_64 rng_;
  double regularity_ = 1.0;
  double hub_pull_ = 0.0;
  Territory here_;
};

// Largest-remainder apportionment of n users to the four types.
std::vector<UserType> ApportionTypes(const TypeMix& mix, int n) {
  std::array<int, 4> counts{};
  std::array<double, 4> remainder{};
  int assigned = 0;
  for (size_t i = 0; i < 4; ++i) {
    double exact = mix[i] * n;
    counts[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - counts[i];
    assigned += counts[i];
  }
  std::array<size_t, 4> order = {0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainder[a] > remainder[b];
  });
  for (size_t k = 0; assigned < n; k = (k + 1) % 4) {
    ++counts[order[k]];
    ++assigned;
  }
  std::vector<UserType> out;
  out.reserve(n);
  for (size_t i = 0; i < 4; ++i) {
    out.insert(out.end(), counts[i], kAllUserTypes[i]);
  }
  return out;
}

}  // namespace

absl::Status SynthConfig::Validate() const {
  if (n_users < 1) return absl::InvalidArgumentError("n_users must be >= 1");
  if (n_towers < 2) return absl::InvalidArgumentError("n_towers must be >= 2");
  if (duration <= 0) return absl::InvalidArgumentError("duration must be > 0");
  if (!(home_bias >= 0.0 && home_bias <= 1.0)) {
    return absl::InvalidArgumentError("home_bias must be in [0, 1]");
  }
  if (!(hub_fraction >= 0.0 && hub_fraction <= 1.0)) {
    return absl::InvalidArgumentError("hub_fraction must be in [0, 1]");
  }
  if (!(mean_dwell > 0.0)) {
    return absl::InvalidArgumentError("mean_dwell must be > 0");
  }
  double total = 0.0;
  for (double f : type_mix) {
    if (!(f >= 0.0 && f <= 1.0)) {
      return absl::InvalidArgumentError("type mix fractions must be in [0, 1]");
    }
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrFormat("type mix sums to %g, expected 1", total));
  }
  return absl::OkStatus();
}

absl::StatusOr<SynthConfig> SynthConfigFromKeyValue(const KeyValueConfig& kv,
                                                    const std::string& prefix) {
  SynthConfig cfg;
  auto key = [&](const char* name) { return prefix + name; };
  ZT_ASSIGN_OR_RETURN(int64_t n_users, kv.GetInt(key("n_users"), cfg.n_users));
  ZT_ASSIGN_OR_RETURN(int64_t n_towers,
                      kv.GetInt(key("n_towers"), cfg.n_towers));
  ZT_ASSIGN_OR_RETURN(cfg.duration, kv.GetInt(key("duration"), cfg.duration));
  ZT_ASSIGN_OR_RETURN(cfg.home_bias,
                      kv.GetDouble(key("home_bias"), cfg.home_bias));
  ZT_ASSIGN_OR_RETURN(cfg.hub_fraction,
                      kv.GetDouble(key("hub_fraction"), cfg.hub_fraction));
  ZT_ASSIGN_OR_RETURN(int64_t seed, kv.GetInt(key("seed"), 1));
  ZT_ASSIGN_OR_RETURN(cfg.mean_dwell,
                      kv.GetDouble(key("mean_dwell"), cfg.mean_dwell));
  const char* mix_keys[4] = {"mix_pm", "mix_npm", "mix_pnm", "mix_npnm"};
  for (size_t i = 0; i < 4; ++i) {
    ZT_ASSIGN_OR_RETURN(cfg.type_mix[i],
                        kv.GetDouble(key(mix_keys[i]), cfg.type_mix[i]));
  }
  cfg.n_users = static_cast<int>(n_users);
  cfg.n_towers = static_cast<int>(n_towers);
  cfg.seed = static_cast<uint64_t>(seed);
  ZT_RETURN_IF_ERROR(cfg.Validate());
  return cfg;
}

TypeMix TypologyTargets(const SynthConfig& cfg) { return cfg.type_mix; }

absl::StatusOr<SyntheticPopulation> GeneratePopulation(const SynthConfig& cfg) {
  ZT_RETURN_IF_ERROR(cfg.Validate());
  std::seed_seq master_seq{static_cast<uint32_t>(cfg.seed),
                           static_cast<uint32_t>(cfg.seed >> 32), 0x70707u};
  std::mt19937_64 master(master_seq);

  std::vector<TowerId> towers(cfg.n_towers);
  for (int i = 0; i < cfg.n_towers; ++i) towers[i].value = i;
  std::shuffle(towers.begin(), towers.end(), master);
  int n_hubs = static_cast<int>(std::llround(cfg.hub_fraction * cfg.n_towers));
  n_hubs = std::clamp(n_hubs, 0, cfg.n_towers);
  std::vector<TowerId> hubs(towers.begin(), towers.begin() + n_hubs);
  std::vector<TowerId> ordinary(towers.begin() + n_hubs, towers.end());
  // Hubs stay in permutation order, which is their popularity rank.
  std::sort(ordinary.begin(), ordinary.end());

  std::vector<UserType> types = ApportionTypes(cfg.type_mix, cfg.n_users);
  std::shuffle(types.begin(), types.end(), master);

  std::vector<Trace> traces;
  traces.reserve(cfg.n_users);
  for (int u = 0; u < cfg.n_users; ++u) {
    // Per-user sub-seed: users are independent of each other and of the
    // order in which they are generated.
    std::seed_seq user_seq{static_cast<uint32_t>(cfg.seed),
                           static_cast<uint32_t>(cfg.seed >> 32),
                           static_cast<uint32_t>(u), 0x75736572u};
    uint64_t sub_seed;
    user_seq.generate(reinterpret_cast<uint32_t*>(&sub_seed),
                      reinterpret_cast<uint32_t*>(&sub_seed) + 2);
    UserWalker walker(cfg, ordinary, hubs, types[u], sub_seed);
    traces.push_back(walker.Walk(UserId{static_cast<uint32_t>(u)}));
  }
  ZT_ASSIGN_OR_RETURN(Dataset ds, Dataset::Create(std::move(traces)));
  return SyntheticPopulation{std::move(ds), std::move(types)};
}

absl::StatusOr<Dataset> Generate(const SynthConfig& cfg) {
  ZT_ASSIGN_OR_RETURN(SyntheticPopulation pop, GeneratePopulation(cfg));
  return std::move(pop.dataset);
}

absl::StatusOr<BusyIntervals> GenerateBusyIntervals(const Dataset& dataset,
                                                    const BusyConfig& cfg) {
  if (!(cfg.arrivals_per_day >= 0) || !(cfg.mean_duration > 0)) {
    return absl::InvalidArgumentError(
        "busy arrivals must be >= 0 and mean duration > 0");
  }
  BusyIntervals out;
  if (cfg.arrivals_per_day == 0) return out;
  const double rate = cfg.arrivals_per_day / static_cast<double>(kSecondsPerDay);
  for (const Trace& trace : dataset.traces()) {
    if (trace.events.empty()) continue;
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed),
                      static_cast<uint32_t>(cfg.seed >> 32), trace.owner.value,
                      0x62757379u};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> gap(rate);
    std::exponential_distribution<double> length(1.0 / cfg.mean_duration);
    const Seconds end = trace.events.back().end;
    std::vector<TimeInterval>& mine = out[trace.owner];
    double t = static_cast<double>(trace.events.front().start);
    while (true) {
      t += gap(rng);
      if (t >= static_cast<double>(end)) break;
      Seconds s = static_cast<Seconds>(t);
      Seconds e = std::min(end, s + std::max<Seconds>(1, std::llround(length(rng))));
      if (!mine.empty() && s <= mine.back().end) {
        mine.back().end = std::max(mine.back().end, e);
      } else {
        mine.push_back({s, e});
      }
      t = static_cast<double>(std::max(e, s));
    }
  }
  return out;
}

}  // namespace ziptrace
