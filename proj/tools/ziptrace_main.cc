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

// ziptrace: synthetic traces, identifier renewal, the provider attack and
// the experiment harness from the command line.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "ziptrace/accuracy.h"
#include "ziptrace/defender.h"
#include "ziptrace/harness.h"
#include "ziptrace/key_value.h"
#include "ziptrace/linking.h"
#include "ziptrace/metrics.h"
#include "ziptrace/profiling.h"
#include "ziptrace/report_io.h"
#include "ziptrace/status_macros.h"
#include "ziptrace/synthgen.h"
#include "ziptrace/trace_io.h"

namespace ziptrace {
namespace {

template <typename T, typename Reader>
absl::StatusOr<T> ReadFile(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  return reader(in);
}

template <typename Writer>
absl::Status WriteFile(const std::string& path, Writer writer) {
  std::ofstream out(path);
  if (!out) {
    return absl::InternalError(absl::StrFormat("cannot create %s", path));
  }
  writer(out);
  out.close();
  if (!out) return absl::InternalError(absl::StrFormat("failed writing %s", path));
  return absl::OkStatus();
}

absl::Status Synth(const std::string& config, const std::string& out) {
  KeyValueConfig kv;
  if (!config.empty()) {
    ZT_ASSIGN_OR_RETURN(kv, KeyValueConfig::FromFile(config));
  }
  ZT_ASSIGN_OR_RETURN(SynthConfig cfg, SynthConfigFromKeyValue(kv, ""));
  ZT_RETURN_IF_ERROR(kv.CheckAllConsumed());
  ZT_ASSIGN_OR_RETURN(Dataset ds, Generate(cfg));
  return WriteFile(out, [&](std::ostream& o) { WriteTraces(ds, o); });
}

struct DefendArgs {
  std::string in, out, truth, busy, cooldown_rule = "ratio";
  double utility = 0.95;
  int64_t max_off = 30;
  uint64_t seed = 0;
};

absl::Status Defend(const DefendArgs& a) {
  ZT_ASSIGN_OR_RETURN(Dataset ds, ReadFile<Dataset>(a.in, ReadTraces));
  BusyIntervals busy;
  if (!a.busy.empty()) {
    ZT_ASSIGN_OR_RETURN(busy, ReadFile<BusyIntervals>(a.busy, ReadBusyIntervals));
  }
  RenewalPolicy policy;
  policy.utility = a.utility;
  policy.max_off_time = a.max_off;
  policy.rng_seed = a.seed;
  policy.cooldown_rule = a.cooldown_rule == "literal"
                             ? CooldownRule::kLiteralProduct
                             : CooldownRule::kUtilityRatio;
  PseudonymIssuer issuer(a.seed);
  std::vector<PseudonymousTrace> fragments;
  Seconds total = 0;
  Seconds offline = 0;
  int renewals = 0;
  for (const Trace& t : ds.traces()) {
    std::span<const TimeInterval> b;
    if (auto it = busy.find(t.owner); it != busy.end()) b = it->second;
    ZT_ASSIGN_OR_RETURN(AnonymizeResult r, Anonymize(t, policy, issuer, b));
    total += r.ledger.total_time;
    offline += r.ledger.offline_time;
    renewals += r.ledger.renewals;
    for (auto& f : r.fragments) fragments.push_back(std::move(f));
  }
  std::vector<AnonymousTrace> views;
  for (const PseudonymousTrace& f : fragments) views.push_back(f.view);
  SortForPool(views);
  ZT_RETURN_IF_ERROR(WriteFile(
      a.out, [&](std::ostream& o) { WriteAnonymousTraces(views, o); }));
  if (!a.truth.empty()) {
    TruthSidecar sidecar = MakeSidecar(fragments);
    ZT_RETURN_IF_ERROR(WriteFile(
        a.truth, [&](std::ostream& o) { WriteTruthSidecar(sidecar, o); }));
  }
  std::cerr << absl::StrFormat(
      "%d fragments, %d renewals, realized utility %.4f\n", views.size(),
      renewals, total == 0 ? 1.0 : 1.0 - static_cast<double>(offline) / total);
  return absl::OkStatus();
}

struct AttackArgs {
  std::string train, anon, truth, out;
  int64_t window = 30;
  int max_links = 0;
  bool keep_repeats = false;
};

absl::Status Attack(const AttackArgs& a) {
  ZT_ASSIGN_OR_RETURN(Dataset train, ReadFile<Dataset>(a.train, ReadTraces));
  ZT_ASSIGN_OR_RETURN(
      std::vector<AnonymousTrace> anon,
      ReadFile<std::vector<AnonymousTrace>>(a.anon, ReadAnonymousTraces));
  SortForPool(anon);
  ZT_ASSIGN_OR_RETURN(
      UserProfileSet profiles,
      UserProfileSet::Build(train, {.collapse_repeats = !a.keep_repeats}));
  ZT_ASSIGN_OR_RETURN(LinkMatrix lm, TrainLinkMatrix(train, a.window));
  FragmentPool pool(anon);
  std::vector<Attribution> out;
  for (const AnonymousTrace& f : anon) {
    if (f.events.empty()) continue;
    ZT_ASSIGN_OR_RETURN(Attribution at, LinkAndClassify(profiles, lm, pool,
                                                        f.pseudonym, a.max_links));
    out.push_back(std::move(at));
  }
  ZT_RETURN_IF_ERROR(
      WriteFile(a.out, [&](std::ostream& o) { WriteAttributionsCsv(out, o); }));
  if (!a.truth.empty()) {
    ZT_ASSIGN_OR_RETURN(TruthSidecar sidecar,
                        ReadFile<TruthSidecar>(a.truth, ReadTruthSidecar));
    ZT_ASSIGN_OR_RETURN(std::vector<UserAccuracy> per_user,
                        EvaluateAccuracy(out, sidecar));
    std::vector<double> acc;
    for (const UserAccuracy& u : per_user) acc.push_back(u.accuracy());
    MeanWithCi s = Summarize(acc);
    std::cerr << absl::StrFormat("mean per-user accuracy %.4f +/- %.4f (%d users)\n",
                                 s.mean, s.ci95_halfwidth, s.n);
  }
  return absl::OkStatus();
}

absl::Status Metrics(const std::string& in, int64_t split,
                     const std::string& out) {
  ZT_ASSIGN_OR_RETURN(Dataset ds, ReadFile<Dataset>(in, ReadTraces));
  DatasetSplit parts = SplitByPeriod(ds, split);
  std::vector<BehaviorScores> scores =
      ComputeBehaviorScores(parts.train, parts.test, parts.test);
  return WriteFile(out, [&](std::ostream& o) { WriteScoresCsv(scores, o); });
}

absl::Status Run(const std::string& config, const std::string& out_dir) {
  ZT_ASSIGN_OR_RETURN(KeyValueConfig kv, KeyValueConfig::FromFile(config));
  ZT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ExperimentConfigFromKeyValue(kv));
  ZT_ASSIGN_OR_RETURN(ExperimentReport report, RunExperiments(cfg));
  return EmitPlotData(report, kv, cfg, out_dir);
}

int Main(int argc, char** argv) {
  CLI::App app{"Identifier renewal and deanonymization simulator"};
  app.require_subcommand(1);

  std::string synth_config, synth_out;
  auto* synth = app.add_subcommand("synth", "Generate synthetic traces");
  synth->add_option("--config", synth_config, "key=value SynthConfig file");
  synth->add_option("--out", synth_out, "Output trace CSV")->required();

  DefendArgs d;
  auto* defend = app.add_subcommand("defend", "Anonymize traces");
  defend->add_option("--in", d.in, "Input trace CSV")->required();
  defend->add_option("--utility", d.utility, "Target utility in [0, 1]")
      ->capture_default_str();
  defend->add_option("--max-off", d.max_off, "Maximum offline seconds")
      ->capture_default_str();
  defend->add_option("--seed", d.seed, "Seed for offline draws and ids")
      ->capture_default_str();
  defend->add_option("--out", d.out, "Anonymous trace CSV")->required();
  defend->add_option("--truth", d.truth, "Truth sidecar CSV");
  defend->add_option("--busy", d.busy, "Busy intervals CSV");
  defend->add_option("--cooldown-rule", d.cooldown_rule, "ratio or literal")
      ->check(CLI::IsMember({"ratio", "literal"}))
      ->capture_default_str();

  AttackArgs at;
  auto* attack = app.add_subcommand("attack", "Attribute anonymous traces");
  attack->add_option("--train", at.train, "Labelled training CSV")->required();
  attack->add_option("--anon", at.anon, "Anonymous trace CSV")->required();
  attack->add_option("--truth", at.truth, "Truth sidecar, scoring only");
  attack->add_option("--window", at.window, "Link window seconds")
      ->capture_default_str();
  attack->add_option("--max-links", at.max_links, "0 = unbounded")
      ->capture_default_str();
  attack->add_flag("--keep-repeats", at.keep_repeats,
                   "Do not collapse consecutive repeated towers");
  attack->add_option("--out", at.out, "Attributions CSV")->required();

  std::string metrics_in, metrics_out;
  int64_t metrics_split = 0;
  auto* metrics = app.add_subcommand("metrics", "Behaviour scores per user");
  metrics->add_option("--in", metrics_in, "Trace CSV")->required();
  metrics->add_option("--split", metrics_split, "Split instant (s)")->required();
  metrics->add_option("--out", metrics_out, "Scores CSV")->required();

  std::string run_config, run_out;
  auto* run = app.add_subcommand("run", "Run the experiment grid");
  run->add_option("--config", run_config, "Experiment config")->required();
  run->add_option("--out-dir", run_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  if (*synth) {
    status = Synth(synth_config, synth_out);
  } else if (*defend) {
    status = Defend(d);
  } else if (*attack) {
    status = Attack(at);
  } else if (*metrics) {
    status = Metrics(metrics_in, metrics_split, metrics_out);
  } else if (*run) {
    status = Run(run_config, run_out);
  }
  if (!status.ok()) {
    std::cerr << "ziptrace: " << status << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace ziptrace

int main(int argc, char** argv) { return ziptrace::Main(argc, argv); }
