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

#include "ziptrace/linking.h"

#include <algorithm>
#include <numeric>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_format.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {

absl::StatusOr<LinkMatrix> TrainLinkMatrix(const Dataset& training,
                                           Seconds window) {
  if (window <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("link window must be > 0, got %d", window));
  }
  TransitionCounts counts;
  absl::flat_hash_set<TowerId> seen;
  for (const Trace& trace : training.traces()) {
    const std::vector<TowerEvent>& ev = trace.events;
    for (size_t i = 0; i + 1 < ev.size(); ++i) {
      // Contiguous dwell at one tower is not a boundary.
      if (ev[i].tower == ev[i + 1].tower && ev[i].end == ev[i + 1].start) {
        continue;
      }
      const TowerId p = ev[i].tower;
      const Seconds horizon = ev[i].end + window;
      seen.clear();
      for (size_t j = i + 1; j < ev.size() && ev[j].start <= horizon; ++j) {
        if (seen.insert(ev[j].tower).second) counts.AddTransition(p, ev[j].tower);
      }
    }
  }
  LinkMatrix lm;
  lm.window = window;
  ZT_ASSIGN_OR_RETURN(lm.matrix,
                      TransitionMatrix::Create(counts, UniverseOf(training)));
  return lm;
}

FragmentPool::FragmentPool(std::span<const AnonymousTrace> fragments)
    : fragments_(fragments) {
  for (size_t i = 0; i < fragments_.size(); ++i) {
    by_id_.emplace(fragments_[i].pseudonym, i);
    if (!fragments_[i].events.empty()) by_start_.push_back(i);
  }
  std::stable_sort(by_start_.begin(), by_start_.end(),
                   [&](size_t a, size_t b) {
                     return fragments_[a].events.front().start <
                            fragments_[b].events.front().start;
                   });
  starts_.reserve(by_start_.size());
  for (size_t i : by_start_) starts_.push_back(fragments_[i].events.front().start);
}

void SortForPool(std::vector<AnonymousTrace>& fragments) {
  std::sort(fragments.begin(), fragments.end(),
            [](const AnonymousTrace& a, const AnonymousTrace& b) {
              if (a.events.empty() != b.events.empty()) {
                return b.events.empty();
              }
              if (!a.events.empty() &&
                  a.events.front().start != b.events.front().start) {
                return a.events.front().start < b.events.front().start;
              }
              return a.pseudonym.raw() < b.pseudonym.raw();
            });
}

std::optional<size_t> FragmentPool::OrdinalOf(PseudonymId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const size_t> FragmentPool::StartingIn(Seconds after,
                                                 Seconds upto) const {
  auto lo = std::upper_bound(starts_.begin(), starts_.end(), after);
  auto hi = std::upper_bound(lo, starts_.end(), upto);
  return std::span<const size_t>(by_start_)
      .subspan(lo - starts_.begin(), hi - lo);
}

std::vector<size_t> LinkChain(const LinkMatrix& lm, const FragmentPool& pool,
                              size_t target, int max_links) {
  std::vector<size_t> chain = {target};
  if (pool.at(target).events.empty()) return chain;
  absl::flat_hash_set<size_t> used = {target};
  while (max_links <= 0 || static_cast<int>(chain.size()) <= max_links) {
    const TowerEvent& last = pool.at(chain.back()).events.back();
    std::optional<size_t> pick;
    double pick_p = 0.0;
    for (size_t c : pool.StartingIn(last.end, last.end + lm.window)) {
      if (used.contains(c)) continue;
      double p = lm.matrix.Probability(last.tower,
                                       pool.at(c).events.front().tower);
      // Candidates arrive in tie-break order, so only a clear win replaces.
      if (!pick || p > pick_p * (1.0 + kLinkTieTolerance)) {
        pick = c;
        pick_p = p;
      }
    }
    if (!pick) break;
    chain.push_back(*pick);
    used.insert(*pick);
  }
  return chain;
}

absl::StatusOr<Attribution> LinkAndClassify(const UserProfileSet& profiles,
                                            const LinkMatrix& lm,
                                            const FragmentPool& pool,
                                            PseudonymId target,
                                            int max_links) {
  std::optional<size_t> ordinal = pool.OrdinalOf(target);
  if (!ordinal) {
    return absl::NotFoundError(absl::StrFormat(
        "pseudonym %d is not in the fragment pool", target.raw()));
  }
  std::vector<size_t> chain = LinkChain(lm, pool, *ordinal, max_links);
  std::vector<TowerId> seq;
  Attribution out;
  out.pseudonym = target;
  for (size_t c : chain) {
    out.linked_chain.push_back(pool.at(c).pseudonym);
    for (const TowerEvent& e : pool.at(c).events) seq.push_back(e.tower);
  }
  ZT_ASSIGN_OR_RETURN(Classification cls,
                      Classify(profiles, std::span<const TowerId>(seq)));
  out.predicted = cls.user;
  out.log_score = cls.log_score;
  return out;
}

}  // namespace ziptrace
