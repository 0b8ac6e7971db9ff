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

// Trajectory linking: greedily extend a pseudonymous fragment with the
// fragment most likely to follow it across an offline gap, then profile the
// stitched sequence.

#ifndef ZIPTRACE_LINKING_H_
#define ZIPTRACE_LINKING_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "ziptrace/profiling.h"
#include "ziptrace/trace_model.h"
#include "ziptrace/transition_matrix.h"

namespace ziptrace {

struct LinkMatrix {
  TransitionMatrix matrix;
  Seconds window = 0;
};

// For every event boundary in the training traces (a tower change, or a
// time gap between two events) with p the tower being left and t the end of
// its event, counts each distinct tower q whose event starts at or before
// t + window among the events that follow. Rows are normalised and smoothed
// like profiles. InvalidArgument if window <= 0.
absl::StatusOr<LinkMatrix> TrainLinkMatrix(const Dataset& training,
                                           Seconds window);

// Attacker-side index over anonymous fragments. Holds a view of
// `fragments`, which must outlive the pool. A fragment's ordinal is its
// position in `fragments`.
class FragmentPool {
 public:
  explicit FragmentPool(std::span<const AnonymousTrace> fragments);

  size_t size() const { return fragments_.size(); }
  const AnonymousTrace& at(size_t ordinal) const {
    return fragments_[ordinal];
  }
  std::optional<size_t> OrdinalOf(PseudonymId id) const;

  // Ordinals of non-empty fragments whose first event starts in
  // (after, upto], by ascending start then ordinal.
  std::span<const size_t> StartingIn(Seconds after, Seconds upto) const;

 private:
  std::span<const AnonymousTrace> fragments_;
  absl::flat_hash_map<PseudonymId, size_t> by_id_;
  std::vector<size_t> by_start_;
  std::vector<Seconds> starts_;  // parallel to by_start_
};

// Sorts fragments by first start, then pseudonym, so pool ordinals carry no
// information about how the fragments were produced. Empty fragments last.
void SortForPool(std::vector<AnonymousTrace>& fragments);

// Link probabilities within this relative distance are ties.
inline constexpr double kLinkTieTolerance = 1e-12;

// Greedy chain from `target` (ordinals, target first). Each step takes the
// unused fragment starting in (chain end, chain end + window] that maximises
// T_link[last tower, first tower]; ties go to the earliest start, then the
// smallest ordinal. max_links == 0 means no limit.
std::vector<size_t> LinkChain(const LinkMatrix& lm, const FragmentPool& pool,
                              size_t target, int max_links);

struct Attribution {
  PseudonymId pseudonym;
  UserId predicted;
  double log_score = 0.0;
  std::vector<PseudonymId> linked_chain;
};

// NotFound if `target` is not in the pool.
absl::StatusOr<Attribution> LinkAndClassify(const UserProfileSet& profiles,
                                            const LinkMatrix& lm,
                                            const FragmentPool& pool,
                                            PseudonymId target,
                                            int max_links = 0);

}  // namespace ziptrace

#endif  // ZIPTRACE_LINKING_H_
