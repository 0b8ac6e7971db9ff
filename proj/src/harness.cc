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

#include "ziptrace/harness.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <random>
#include <thread>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "ziptrace/accuracy.h"
#include "ziptrace/linking.h"
#include "ziptrace/metrics.h"
#include "ziptrace/profiling.h"
#include "ziptrace/status_macros.h"
#include "ziptrace/trace_io.h"

namespace ziptrace {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void ParallelFor(size_t n, int threads, Fn fn) {
  size_t workers = threads > 0 ? static_cast<size_t>(threads)
                               : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::mt19937_64 Stream(uint64_t seed, std::initializer_list<uint64_t> salt) {
  std::vector<uint32_t> words = {static_cast<uint32_t>(seed),
                                 static_cast<uint32_t>(seed >> 32)};
  for (uint64_t s : salt) {
    words.push_back(static_cast<uint32_t>(s));
    words.push_back(static_cast<uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

// First k items of a seeded shuffle.
template <typename T>
std::vector<T> SampleWithoutReplacement(std::vector<T> items, size_t k,
                                        std::mt19937_64& rng) {
  k = std::min(k, items.size());
  for (size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<size_t> pick(i, items.size() - 1);
    std::swap(items[i], items[pick(rng)]);
  }
  items.resize(k);
  return items;
}

uint64_t DoubleBits(double d) {
  uint64_t bits;
  static_assert(sizeof bits == sizeof d);
  std::memcpy(&bits, &d, sizeof bits);
  return bits;
}

struct SeedContext {
  uint64_t seed = 0;
  Dataset train;
  Dataset test;
  absl::flat_hash_map<UserId, UserType> types;
  UserProfileSet profiles;
  BusyIntervals busy;
  std::map<Seconds, LinkMatrix> link_matrices;
};

absl::StatusOr<SeedContext> Prepare(const ExperimentConfig& cfg,
                                    uint64_t seed) {
  SeedContext ctx;
  ctx.seed = seed;
  Dataset full;
  if (cfg.traces_path.empty()) {
    SynthConfig synth = cfg.synth;
    synth.seed = seed;
    ZT_ASSIGN_OR_RETURN(full, Generate(synth));
  } else {
    std::ifstream in(cfg.traces_path);
    if (!in) {
      return absl::NotFoundError(
          absl::StrFormat("cannot open %s", cfg.traces_path));
    }
    ZT_ASSIGN_OR_RETURN(full, ReadTraces(in));
  }
  auto span = full.TimeSpan();
  if (!span) return absl::InvalidArgumentError("dataset has no events");
  Seconds boundary =
      cfg.split.value_or(span->first + std::llround(cfg.train_fraction *
                                                    (span->second - span->first)));
  DatasetSplit split = SplitByPeriod(full, boundary);
  ctx.train = std::move(split.train);
  ctx.test = std::move(split.test);
  if (ctx.train.empty() || ctx.test.empty()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "split at %d leaves an empty training or test period", boundary));
  }
  for (const BehaviorScores& s :
       ComputeBehaviorScores(ctx.train, ctx.test, ctx.test)) {
    ctx.types[s.user] = s.type;
  }
  ZT_ASSIGN_OR_RETURN(
      ctx.profiles,
      UserProfileSet::Build(ctx.train, {.collapse_repeats = cfg.collapse_repeats}));
  if (!cfg.busy_path.empty()) {
    std::ifstream in(cfg.busy_path);
    if (!in) {
      return absl::NotFoundError(
          absl::StrFormat("cannot open %s", cfg.busy_path));
    }
    ZT_ASSIGN_OR_RETURN(ctx.busy, ReadBusyIntervals(in));
  } else if (cfg.busy.arrivals_per_day > 0) {
    BusyConfig busy = cfg.busy;
    busy.seed ^= seed;
    ZT_ASSIGN_OR_RETURN(ctx.busy, GenerateBusyIntervals(ctx.test, busy));
  }
  return ctx;
}

absl::StatusOr<const LinkMatrix*> LinkMatrixFor(SeedContext& ctx,
                                                Seconds window) {
  auto it = ctx.link_matrices.find(window);
  if (it == ctx.link_matrices.end()) {
    ZT_ASSIGN_OR_RETURN(LinkMatrix lm, TrainLinkMatrix(ctx.train, window));
    it = ctx.link_matrices.emplace(window, std::move(lm)).first;
  }
  return &it->second;
}

Seconds SpanOf(const Trace& t) {
  return t.events.empty() ? 0 : t.events.back().end - t.events.front().start;
}

struct UserOutcome {
  UserId user;
  double accuracy = 0.0;
  double realized_utility = 1.0;
  double cycles_per_day = 0.0;
  int chains = 0;
  int chains_linked_correctly = 0;
};

// Groups users by measured type; the last group holds everyone.
std::vector<std::pair<std::string, std::vector<const UserOutcome*>>> Group(
    const std::vector<UserOutcome>& outcomes,
    const absl::flat_hash_map<UserId, UserType>& types) {
  std::vector<std::pair<std::string, std::vector<const UserOutcome*>>> groups;
  for (UserType t : kAllUserTypes) {
    std::vector<const UserOutcome*> members;
    for (const UserOutcome& o : outcomes) {
      auto it = types.find(o.user);
      if (it != types.end() && it->second == t) members.push_back(&o);
    }
    if (!members.empty()) {
      groups.emplace_back(std::string(UserTypeLabel(t)), std::move(members));
    }
  }
  std::vector<const UserOutcome*> all;
  for (const UserOutcome& o : outcomes) all.push_back(&o);
  groups.emplace_back(kAllUsersLabel, std::move(all));
  return groups;
}

absl::StatusOr<std::vector<TradeoffRow>> EvaluatePolicy(
    const ExperimentConfig& cfg, SeedContext& ctx, double utility,
    Seconds max_off) {
  RenewalPolicy policy;
  policy.utility = utility;
  policy.max_off_time = max_off;
  policy.rng_seed = ctx.seed;
  policy.cooldown_rule = cfg.cooldown_rule;
  ZT_RETURN_IF_ERROR(policy.Validate());
  PseudonymIssuer issuer(ctx.seed);

  // Defender side.
  std::vector<PseudonymousTrace> fragments;
  std::vector<UserOutcome> outcomes;
  for (const Trace& trace : ctx.test.traces()) {
    std::span<const TimeInterval> busy;
    if (auto it = ctx.busy.find(trace.owner); it != ctx.busy.end()) {
      busy = it->second;
    }
    ZT_ASSIGN_OR_RETURN(AnonymizeResult r,
                        Anonymize(trace, policy, issuer, busy));
    if (r.fragments.empty()) continue;
    UserOutcome o;
    o.user = trace.owner;
    o.realized_utility = r.ledger.RealizedUtility();
    const Seconds span = SpanOf(trace);
    o.cycles_per_day =
        span == 0 ? 0.0
                  : r.ledger.renewals * static_cast<double>(kSecondsPerDay) /
                        static_cast<double>(span);
    outcomes.push_back(o);
    for (PseudonymousTrace& f : r.fragments) fragments.push_back(std::move(f));
  }
  TruthSidecar truth = MakeSidecar(fragments);

  // Attacker side: only pseudonyms and events.
  std::vector<AnonymousTrace> views;
  views.reserve(fragments.size());
  for (const PseudonymousTrace& f : fragments) views.push_back(f.view);
  SortForPool(views);
  FragmentPool pool(views);
  const Seconds window = cfg.link_window > 0 ? cfg.link_window : max_off;
  ZT_ASSIGN_OR_RETURN(const LinkMatrix* lm, LinkMatrixFor(ctx, window));

  // Sample evaluation targets per user.
  std::map<UserId, std::vector<PseudonymId>> owned;
  for (const PseudonymousTrace& f : fragments) {
    owned[f.truth].push_back(f.view.pseudonym);
  }
  std::vector<PseudonymId> targets;
  for (auto& [user, ids] : owned) {
    std::mt19937_64 rng = Stream(ctx.seed, {user.value, DoubleBits(utility),
                                            static_cast<uint64_t>(max_off)});
    for (PseudonymId id : SampleWithoutReplacement(
             ids, static_cast<size_t>(cfg.traces_per_user), rng)) {
      targets.push_back(id);
    }
  }
  std::vector<absl::StatusOr<Attribution>> results(targets.size(),
                                                   absl::UnknownError(""));
  ParallelFor(targets.size(), cfg.threads, [&](size_t i) {
    results[i] =
        LinkAndClassify(ctx.profiles, *lm, pool, targets[i], cfg.max_links);
  });
  std::vector<Attribution> attributions;
  attributions.reserve(results.size());
  for (auto& r : results) {
    if (!r.ok()) {
      return absl::Status(r.status().code(),
                          absl::StrFormat("utility %g, max_off %d: %s", utility,
                                          max_off, r.status().message()));
    }
    attributions.push_back(*std::move(r));
  }
  ZT_ASSIGN_OR_RETURN(std::vector<UserAccuracy> per_user,
                      EvaluateAccuracy(attributions, truth));

  // Ground-truth audit of links.
  absl::flat_hash_map<UserId, std::pair<int, int>> link_audit;
  for (const Attribution& a : attributions) {
    UserId owner = *truth.Lookup(a.pseudonym);
    bool linked = false;
    for (size_t k = 1; k < a.linked_chain.size(); ++k) {
      if (*truth.Lookup(a.linked_chain[k - 1]) ==
          *truth.Lookup(a.linked_chain[k])) {
        linked = true;
        break;
      }
    }
    auto& [chains, good] = link_audit[owner];
    ++chains;
    good += linked;
  }
  absl::flat_hash_map<UserId, double> accuracy_of;
  for (const UserAccuracy& ua : per_user) accuracy_of[ua.user] = ua.accuracy();
  for (UserOutcome& o : outcomes) {
    o.accuracy = accuracy_of[o.user];
    auto [chains, good] = link_audit[o.user];
    o.chains = chains;
    o.chains_linked_correctly = good;
  }

  std::vector<TradeoffRow> rows;
  for (const auto& [label, members] : Group(outcomes, ctx.types)) {
    TradeoffRow row;
    row.seed = ctx.seed;
    row.user_type = label;
    row.utility = utility;
    row.max_off_time = max_off;
    row.n_users = static_cast<int>(members.size());
    std::vector<double> acc;
    double util = 0.0;
    double cycles = 0.0;
    int chains = 0;
    int good = 0;
    for (const UserOutcome* o : members) {
      acc.push_back(o->accuracy);
      util += o->realized_utility;
      cycles += o->cycles_per_day;
      chains += o->chains;
      good += o->chains_linked_correctly;
    }
    MeanWithCi s = Summarize(acc);
    row.mean_accuracy = s.mean;
    row.ci95_halfwidth = s.ci95_halfwidth;
    row.mean_realized_utility = util / members.size();
    row.cycles_per_day = cycles / members.size();
    row.battery_fraction_3g =
        DailyBatteryFraction(row.cycles_per_day, cfg.radio_3g, cfg.battery);
    row.battery_fraction_4g =
        DailyBatteryFraction(row.cycles_per_day, cfg.radio_4g, cfg.battery);
    row.link_success_rate =
        chains == 0 ? 0.0 : static_cast<double>(good) / chains;
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<std::vector<TraceLengthRow>> EvaluateTraceLength(
    const ExperimentConfig& cfg, const SeedContext& ctx, Seconds duration) {
  struct Job {
    UserId user;
    std::vector<TowerEvent> events;
  };
  std::vector<Job> jobs;
  bool full_span = false;
  for (const Trace& trace : ctx.test.traces()) {
    if (trace.events.empty()) continue;
    const Seconds t0 = trace.events.front().start;
    const Seconds end = trace.events.back().end;
    std::vector<std::vector<TowerEvent>> slices;
    if (duration >= end - t0) {
      full_span = true;
      slices.push_back(trace.events);
    } else {
      for (Seconds from = t0; from < end; from += duration) {
        std::vector<TowerEvent> s = ClipEvents(trace.events, from, from + duration);
        if (!s.empty()) slices.push_back(std::move(s));
      }
    }
    std::mt19937_64 rng = Stream(
        ctx.seed, {trace.owner.value, static_cast<uint64_t>(duration), 0x6c656eULL});
    for (auto& s : SampleWithoutReplacement(
             std::move(slices), static_cast<size_t>(cfg.traces_per_user), rng)) {
      jobs.push_back({trace.owner, std::move(s)});
    }
  }
  std::vector<absl::StatusOr<Classification>> results(jobs.size(),
                                                      absl::UnknownError(""));
  ParallelFor(jobs.size(), cfg.threads, [&](size_t i) {
    results[i] =
        Classify(ctx.profiles, std::span<const TowerEvent>(jobs[i].events));
  });
  std::map<UserId, std::pair<int, int>> tally;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i].ok()) {
      return absl::Status(results[i].status().code(),
                          absl::StrFormat("duration %d: %s", duration,
                                          results[i].status().message()));
    }
    auto& [n, correct] = tally[jobs[i].user];
    ++n;
    correct += results[i]->user == jobs[i].user;
  }
  std::vector<UserOutcome> outcomes;
  for (const auto& [user, t] : tally) {
    UserOutcome o;
    o.user = user;
    o.accuracy = static_cast<double>(t.second) / t.first;
    outcomes.push_back(o);
  }
  std::vector<TraceLengthRow> rows;
  for (const auto& [label, members] : Group(outcomes, ctx.types)) {
    std::vector<double> acc;
    for (const UserOutcome* o : members) acc.push_back(o->accuracy);
    MeanWithCi s = Summarize(acc);
    rows.push_back({ctx.seed, label, duration, s.n, s.mean, s.ci95_halfwidth,
                    full_span});
  }
  return rows;
}

BatteryRow BatteryFrom(const ExperimentConfig& cfg, const TradeoffRow& r) {
  return {r.seed,
          r.utility,
          r.max_off_time,
          r.cycles_per_day,
          CycleEnergy(cfg.radio_3g),
          CycleEnergy(cfg.radio_4g),
          r.battery_fraction_3g,
          r.battery_fraction_4g};
}

absl::Status RunAll(const ExperimentConfig& cfg, bool tradeoff,
                    bool trace_length, bool sweep, ExperimentReport& report) {
  ZT_RETURN_IF_ERROR(cfg.Validate());
  for (uint64_t seed : cfg.seeds) {
    ZT_ASSIGN_OR_RETURN(SeedContext ctx, Prepare(cfg, seed));
    if (tradeoff) {
      for (Seconds off : cfg.max_off_times) {
        for (double u : cfg.utilities) {
          ZT_ASSIGN_OR_RETURN(auto rows, EvaluatePolicy(cfg, ctx, u, off));
          for (auto& r : rows) report.tradeoff.push_back(std::move(r));
        }
      }
    }
    if (trace_length) {
      for (Seconds d : cfg.trace_lengths) {
        ZT_ASSIGN_OR_RETURN(auto rows, EvaluateTraceLength(cfg, ctx, d));
        for (auto& r : rows) report.trace_length.push_back(std::move(r));
      }
    }
    if (sweep) {
      for (Seconds off : cfg.sweep_max_off_times) {
        ZT_ASSIGN_OR_RETURN(auto rows,
                            EvaluatePolicy(cfg, ctx, cfg.sweep_utility, off));
        for (auto& r : rows) report.offline_sweep.push_back(std::move(r));
      }
    }
  }
  for (const auto* rows : {&report.tradeoff, &report.offline_sweep}) {
    for (const TradeoffRow& r : *rows) {
      if (r.user_type == kAllUsersLabel) {
        report.battery.push_back(BatteryFrom(cfg, r));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ExperimentConfig::Validate() const {
  if (utilities.empty() || max_off_times.empty()) {
    return absl::InvalidArgumentError("policy grid must be non-empty");
  }
  if (seeds.empty()) return absl::InvalidArgumentError("no seeds");
  if (traces_per_user < 1) {
    return absl::InvalidArgumentError("traces_per_user must be >= 1");
  }
  if (max_links < 0) return absl::InvalidArgumentError("max_links must be >= 0");
  if (link_window < 0) {
    return absl::InvalidArgumentError("link_window must be >= 0");
  }
  if (!split && !(train_fraction > 0.0 && train_fraction < 1.0)) {
    return absl::InvalidArgumentError("train_fraction must be in (0, 1)");
  }
  for (double u : utilities) {
    if (!(u >= 0.0 && u <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("utility %g outside [0, 1]", u));
    }
  }
  for (const auto* grid : {&max_off_times, &sweep_max_off_times}) {
    for (Seconds s : *grid) {
      if (s <= 0) {
        return absl::InvalidArgumentError("max_off_time must be > 0");
      }
    }
  }
  for (Seconds d : trace_lengths) {
    if (d <= 0) return absl::InvalidArgumentError("trace length must be > 0");
  }
  if (!(sweep_utility >= 0.0 && sweep_utility <= 1.0)) {
    return absl::InvalidArgumentError("sweep_utility outside [0, 1]");
  }
  ZT_RETURN_IF_ERROR(radio_3g.Validate());
  ZT_RETURN_IF_ERROR(radio_4g.Validate());
  ZT_RETURN_IF_ERROR(battery.Validate());
  if (traces_path.empty()) ZT_RETURN_IF_ERROR(synth.Validate());
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ExperimentConfigFromKeyValue(
    const KeyValueConfig& kv) {
  ExperimentConfig cfg;
  cfg.traces_path = kv.GetString("traces").value_or("");
  ZT_ASSIGN_OR_RETURN(cfg.synth, SynthConfigFromKeyValue(kv, "synth."));
  if (kv.Has("split")) {
    ZT_ASSIGN_OR_RETURN(int64_t split, kv.GetInt("split", 0));
    cfg.split = split;
  }
  ZT_ASSIGN_OR_RETURN(cfg.train_fraction,
                      kv.GetDouble("train_fraction", cfg.train_fraction));
  ZT_ASSIGN_OR_RETURN(cfg.utilities,
                      kv.GetDoubleList("utilities", cfg.utilities));
  ZT_ASSIGN_OR_RETURN(cfg.max_off_times,
                      kv.GetIntList("max_off_times", cfg.max_off_times));
  ZT_ASSIGN_OR_RETURN(cfg.link_window,
                      kv.GetInt("link_window", cfg.link_window));
  ZT_ASSIGN_OR_RETURN(int64_t max_links, kv.GetInt("max_links", 0));
  cfg.max_links = static_cast<int>(max_links);
  ZT_ASSIGN_OR_RETURN(int64_t tpu,
                      kv.GetInt("traces_per_user", cfg.traces_per_user));
  cfg.traces_per_user = static_cast<int>(tpu);
  std::vector<int64_t> default_seeds(cfg.seeds.begin(), cfg.seeds.end());
  ZT_ASSIGN_OR_RETURN(std::vector<int64_t> seeds,
                      kv.GetIntList("seeds", default_seeds));
  cfg.seeds.assign(seeds.begin(), seeds.end());
  if (auto rule = kv.GetString("cooldown_rule")) {
    if (*rule == "ratio") {
      cfg.cooldown_rule = CooldownRule::kUtilityRatio;
    } else if (*rule == "literal") {
      cfg.cooldown_rule = CooldownRule::kLiteralProduct;
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("cooldown_rule must be ratio or literal, got %s", *rule));
    }
  }
  ZT_ASSIGN_OR_RETURN(int64_t collapse, kv.GetInt("collapse_repeats", 1));
  cfg.collapse_repeats = collapse != 0;
  ZT_ASSIGN_OR_RETURN(cfg.trace_lengths,
                      kv.GetIntList("trace_lengths", cfg.trace_lengths));
  ZT_ASSIGN_OR_RETURN(cfg.sweep_utility,
                      kv.GetDouble("sweep_utility", cfg.sweep_utility));
  ZT_ASSIGN_OR_RETURN(
      cfg.sweep_max_off_times,
      kv.GetIntList("sweep_max_off_times", cfg.sweep_max_off_times));
  cfg.busy_path = kv.GetString("busy").value_or("");
  ZT_ASSIGN_OR_RETURN(cfg.busy.arrivals_per_day,
                      kv.GetDouble("busy_arrivals_per_day", 0.0));
  ZT_ASSIGN_OR_RETURN(cfg.busy.mean_duration,
                      kv.GetDouble("busy_mean_duration", cfg.busy.mean_duration));
  ZT_ASSIGN_OR_RETURN(cfg.radio_4g,
                      RadioProfileFromKeyValue(kv, "radio4g.", cfg.radio_4g));
  ZT_ASSIGN_OR_RETURN(cfg.radio_3g,
                      RadioProfileFromKeyValue(kv, "radio3g.", cfg.radio_3g));
  ZT_ASSIGN_OR_RETURN(cfg.battery.voltage_v,
                      kv.GetDouble("battery.voltage", cfg.battery.voltage_v));
  ZT_ASSIGN_OR_RETURN(
      cfg.battery.capacity_mah,
      kv.GetDouble("battery.capacity", cfg.battery.capacity_mah));
  if (auto list = kv.GetString("experiments")) {
    cfg.run_tradeoff = cfg.run_trace_length = cfg.run_offline_sweep = false;
    for (absl::string_view name :
         absl::StrSplit(*list, ',', absl::SkipWhitespace())) {
      name = absl::StripAsciiWhitespace(name);
      if (name == "tradeoff") {
        cfg.run_tradeoff = true;
      } else if (name == "trace_length") {
        cfg.run_trace_length = true;
      } else if (name == "offline_sweep") {
        cfg.run_offline_sweep = true;
      } else {
        return absl::InvalidArgumentError(
            absl::StrFormat("unknown experiment '%s'", name));
      }
    }
  }
  ZT_ASSIGN_OR_RETURN(int64_t threads, kv.GetInt("threads", 0));
  cfg.threads = static_cast<int>(threads);
  ZT_RETURN_IF_ERROR(kv.CheckAllConsumed());
  ZT_RETURN_IF_ERROR(cfg.Validate());
  return cfg;
}

absl::StatusOr<std::vector<TradeoffRow>> RunTradeoff(
    const ExperimentConfig& cfg) {
  ExperimentReport report;
  ZT_RETURN_IF_ERROR(RunAll(cfg, true, false, false, report));
  return std::move(report.tradeoff);
}

absl::StatusOr<std::vector<TraceLengthRow>> RunTraceLength(
    const ExperimentConfig& cfg) {
  ExperimentReport report;
  ZT_RETURN_IF_ERROR(RunAll(cfg, false, true, false, report));
  return std::move(report.trace_length);
}

absl::StatusOr<std::vector<TradeoffRow>> RunOfflineSweep(
    const ExperimentConfig& cfg) {
  ExperimentReport report;
  ZT_RETURN_IF_ERROR(RunAll(cfg, false, false, true, report));
  return std::move(report.offline_sweep);
}

absl::StatusOr<ExperimentReport> RunExperiments(const ExperimentConfig& cfg) {
  ExperimentReport report;
  ZT_RETURN_IF_ERROR(RunAll(cfg, cfg.run_tradeoff, cfg.run_trace_length,
                            cfg.run_offline_sweep, report));
  return report;
}

}  // namespace ziptrace
