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

#include "ziptrace/transition_matrix.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace ziptrace {

TowerUniverse::TowerUniverse(std::vector<TowerId> towers)
    : towers_(std::move(towers)) {
  std::sort(towers_.begin(), towers_.end());
  towers_.erase(std::unique(towers_.begin(), towers_.end()), towers_.end());
}

bool TowerUniverse::Contains(TowerId t) const {
  return std::binary_search(towers_.begin(), towers_.end(), t);
}

double UnseenSlotMass(uint64_t distinct, uint64_t total, uint64_t min_count,
                      size_t slots) {
  if (distinct == 0 || total == 0) return 1.0 / static_cast<double>(slots);
  const double unseen_slots = static_cast<double>(slots - distinct);
  const double epsilon = 1.0 / (1.0 + static_cast<double>(distinct));
  const double rarest = static_cast<double>(min_count) /
                        static_cast<double>(total);
  return std::min(epsilon / unseen_slots,
                  rarest / (1.0 + unseen_slots * rarest));
}

TransitionMatrix::Row TransitionMatrix::MakeRow(
    const absl::flat_hash_map<TowerId, uint64_t>& counts, size_t slots) {
  Row row;
  row.counts = counts;
  uint64_t min_count = std::numeric_limits<uint64_t>::max();
  for (const auto& [q, c] : counts) {
    row.total += c;
    min_count = std::min(min_count, c);
  }
  row.unseen = UnseenSlotMass(counts.size(), row.total, min_count, slots);
  row.log_unseen = std::log(row.unseen);
  row.epsilon = row.unseen * static_cast<double>(slots - counts.size());
  for (const auto& [q, c] : counts) {
    row.log_seen[q] = std::log(SeenMass(row, c));
  }
  return row;
}

double TransitionMatrix::SeenMass(const Row& row, uint64_t count) {
  return (1.0 - row.epsilon) * static_cast<double>(count) /
         static_cast<double>(row.total);
}

absl::StatusOr<TransitionMatrix> TransitionMatrix::Create(
    const TransitionCounts& counts,
    std::shared_ptr<const TowerUniverse> universe) {
  auto check = [&](TowerId t) -> absl::Status {
    if (universe->Contains(t)) return absl::OkStatus();
    return absl::InvalidArgumentError(
        absl::StrFormat("tower %d is outside the tower universe", t.value));
  };
  TransitionMatrix m;
  const size_t slots = universe->slots();
  for (const auto& [q, c] : counts.visits) {
    if (auto s = check(q); !s.ok()) return s;
  }
  absl::flat_hash_map<TowerId, uint64_t> visits;
  for (const auto& [q, c] : counts.visits) {
    if (c > 0) visits[q] = c;
  }
  m.prior_ = MakeRow(visits, slots);
  for (const auto& [p, row] : counts.rows) {
    if (auto s = check(p); !s.ok()) return s;
    absl::flat_hash_map<TowerId, uint64_t> nonzero;
    for (const auto& [q, c] : row) {
      if (auto s = check(q); !s.ok()) return s;
      if (c > 0) nonzero[q] = c;
    }
    if (!nonzero.empty()) m.rows_.emplace(p, MakeRow(nonzero, slots));
  }
  m.log_uniform_ = -std::log(static_cast<double>(slots));
  m.universe_ = std::move(universe);
  return m;
}

double TransitionMatrix::RowMass(const Row* row, TowerId to) const {
  if (row == nullptr) return 1.0 / static_cast<double>(universe_->slots());
  auto it = row->counts.find(to);
  return it == row->counts.end() ? row->unseen : SeenMass(*row, it->second);
}

double TransitionMatrix::Prior(TowerId q) const { return RowMass(&prior_, q); }

double TransitionMatrix::LogPrior(TowerId q) const {
  auto it = prior_.log_seen.find(q);
  return it == prior_.log_seen.end() ? prior_.log_unseen : it->second;
}

double TransitionMatrix::Probability(TowerId from, TowerId to) const {
  auto it = rows_.find(from);
  return RowMass(it == rows_.end() ? nullptr : &it->second, to);
}

double TransitionMatrix::LogProbability(TowerId from, TowerId to) const {
  auto it = rows_.find(from);
  if (it == rows_.end()) return log_uniform_;
  auto jt = it->second.log_seen.find(to);
  return jt == it->second.log_seen.end() ? it->second.log_unseen
                                          : jt->second;
}

double TransitionMatrix::RawPrior(TowerId q) const {
  auto it = prior_.counts.find(q);
  if (it == prior_.counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(prior_.total);
}

double TransitionMatrix::RawProbability(TowerId from, TowerId to) const {
  auto it = rows_.find(from);
  if (it == rows_.end()) return 0.0;
  auto jt = it->second.counts.find(to);
  if (jt == it->second.counts.end()) return 0.0;
  return static_cast<double>(jt->second) /
         static_cast<double>(it->second.total);
}

double TransitionMatrix::SmoothingMass(TowerId from) const {
  auto it = rows_.find(from);
  return it == rows_.end() ? 1.0 : it->second.epsilon;
}

double TransitionMatrix::RowSumOf(const Row* row) const {
  double sum = 0.0;
  for (TowerId t : universe_->towers()) sum += RowMass(row, t);
  // The "other" slot is never a seen successor.
  sum += row == nullptr ? 1.0 / static_cast<double>(universe_->slots())
                        : row->unseen;
  return sum;
}

double TransitionMatrix::RowSum(TowerId from) const {
  auto it = rows_.find(from);
  return RowSumOf(it == rows_.end() ? nullptr : &it->second);
}

double TransitionMatrix::PriorSum() const { return RowSumOf(&prior_); }

std::vector<TowerId> TransitionMatrix::TrainedRows() const {
  std::vector<TowerId> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ziptrace
