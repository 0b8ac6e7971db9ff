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

// Sparse smoothed first-order Markov model over towers.
//
// Probabilities are defined over a tower universe (every tower observed in
// training) plus one shared "other" slot that stands for any tower outside
// it. A row with counts c_q over d distinct successors keeps mass
// (1 - ε) c_q / n on each seen successor and spreads ε over the U unseen
// slots, where
//
//   ε = 1 / (1 + d),  capped so that ε / U <= (1 - ε) min_q c_q / n.
//
// Both quantities depend only on count ratios, so scaling a row's counts by
// a constant leaves the row unchanged. Rows without counts are uniform. The
// prior over starting towers is smoothed the same way from visit counts.

#ifndef ZIPTRACE_TRANSITION_MATRIX_H_
#define ZIPTRACE_TRANSITION_MATRIX_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "ziptrace/trace_model.h"

namespace ziptrace {

// Sorted set of towers seen in training.
class TowerUniverse {
 public:
  explicit TowerUniverse(std::vector<TowerId> towers);

  bool Contains(TowerId t) const;
  size_t size() const { return towers_.size(); }
  // size() + 1: the number of probability slots including "other".
  size_t slots() const { return towers_.size() + 1; }
  std::span<const TowerId> towers() const { return towers_; }

 private:
  std::vector<TowerId> towers_;
};

// Raw counts before normalisation.
struct TransitionCounts {
  absl::flat_hash_map<TowerId, uint64_t> visits;
  absl::flat_hash_map<TowerId, absl::flat_hash_map<TowerId, uint64_t>> rows;

  void AddVisit(TowerId q, uint64_t n = 1) { visits[q] += n; }
  void AddTransition(TowerId p, TowerId q, uint64_t n = 1) {
    rows[p][q] += n;
  }
};

// Mass one unseen slot receives given a count row: `distinct` seen entries,
// `total` observations, rarest entry `min_count`, over `slots` slots.
// The single place where the smoothing scheme lives.
double UnseenSlotMass(uint64_t distinct, uint64_t total, uint64_t min_count,
                      size_t slots);

class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  // Fails if a counted tower lies outside `universe`.
  static absl::StatusOr<TransitionMatrix> Create(
      const TransitionCounts& counts,
      std::shared_ptr<const TowerUniverse> universe);

  double Prior(TowerId q) const;
  double LogPrior(TowerId q) const;
  double Probability(TowerId from, TowerId to) const;
  double LogProbability(TowerId from, TowerId to) const;

  // Unsmoothed count ratios; 0 for an empty row.
  double RawPrior(TowerId q) const;
  double RawProbability(TowerId from, TowerId to) const;

  // Total mass reserved for unseen successors of `from` (1 for an empty row).
  double SmoothingMass(TowerId from) const;
  double PriorSmoothingMass() const { return prior_.epsilon; }

  // Sums over every universe tower plus the "other" slot.
  double RowSum(TowerId from) const;
  double PriorSum() const;

  // Towers with at least one observed outgoing transition.
  std::vector<TowerId> TrainedRows() const;
  bool HasRow(TowerId from) const { return rows_.contains(from); }
  const TowerUniverse& universe() const { return *universe_; }

 private:
  struct Row {
    uint64_t total = 0;
    double epsilon = 1.0;
    double unseen = 0.0;  // per-slot mass
    double log_unseen = 0.0;
    absl::flat_hash_map<TowerId, uint64_t> counts;
    absl::flat_hash_map<TowerId, double> log_seen;
  };
  static Row MakeRow(const absl::flat_hash_map<TowerId, uint64_t>& counts,
                     size_t slots);
  static double SeenMass(const Row& row, uint64_t count);
  double RowMass(const Row* row, TowerId to) const;
  double RowSumOf(const Row* row) const;

  std::shared_ptr<const TowerUniverse> universe_;
  Row prior_;
  absl::flat_hash_map<TowerId, Row> rows_;
  double log_uniform_ = 0.0;
};

}  // namespace ziptrace

#endif  // ZIPTRACE_TRANSITION_MATRIX_H_
