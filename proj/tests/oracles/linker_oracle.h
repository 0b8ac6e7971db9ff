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

// Exhaustive reference for the greedy linker: enumerates every admissible
// chain from the target, then keeps the one whose every step is the best
// available choice and which cannot be extended.

#ifndef ZIPTRACE_TESTS_ORACLES_LINKER_ORACLE_H_
#define ZIPTRACE_TESTS_ORACLES_LINKER_ORACLE_H_

#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "oracles/likelihood_oracle.h"

namespace ziptrace::oracle {

struct Visit {
  uint32_t tower;
  int64_t start;
  int64_t end;
};

struct OracleFragment {
  int64_t first_start;
  int64_t last_end;
  uint32_t first_tower;
  uint32_t last_tower;
};

// Exact link matrix: for each boundary between consecutive visits that is
// not a contiguous stay at one tower, each distinct tower starting within
// `window` of the boundary's end is counted once.
class ExactLinkMatrix {
 public:
  ExactLinkMatrix(const std::vector<std::vector<Visit>>& traces,
                  int64_t window) {
    std::set<uint32_t> universe;
    for (const auto& t : traces) {
      for (const Visit& v : t) universe.insert(v.tower);
      for (size_t i = 0; i + 1 < t.size(); ++i) {
        if (t[i].tower == t[i + 1].tower && t[i].end == t[i + 1].start) {
          continue;
        }
        std::set<uint32_t> reached;
        for (size_t j = i + 1; j < t.size(); ++j) {
          if (t[j].start <= t[i].end + window) reached.insert(t[j].tower);
        }
        for (uint32_t q : reached) ++counts_[t[i].tower][q];
      }
    }
    slots_ = universe.size() + 1;
  }

  Rational P(uint32_t p, uint32_t q) const {
    auto it = counts_.find(p);
    std::map<uint32_t, uint64_t> empty;
    return ExactRow(it == counts_.end() ? empty : it->second, slots_).P(q);
  }

 private:
  std::map<uint32_t, std::map<uint32_t, uint64_t>> counts_;
  size_t slots_ = 1;
};

inline std::vector<size_t> Candidates(const std::vector<OracleFragment>& f,
                                      const std::vector<size_t>& chain,
                                      int64_t window) {
  const int64_t end = f[chain.back()].last_end;
  std::vector<size_t> out;
  for (size_t c = 0; c < f.size(); ++c) {
    bool used = false;
    for (size_t x : chain) used |= x == c;
    if (!used && f[c].first_start > end && f[c].first_start - end <= window) {
      out.push_back(c);
    }
  }
  return out;
}

inline void EnumerateChains(const std::vector<OracleFragment>& f,
                            int64_t window, int max_links,
                            std::vector<size_t>& chain,
                            std::vector<std::vector<size_t>>& out) {
  out.push_back(chain);
  if (max_links > 0 && static_cast<int>(chain.size()) > max_links) return;
  for (size_t c : Candidates(f, chain, window)) {
    chain.push_back(c);
    EnumerateChains(f, window, max_links, chain, out);
    chain.pop_back();
  }
}

// True if `next` is the preferred candidate after `chain`: highest link
// probability, then earliest start, then smallest ordinal.
inline bool IsGreedyStep(const std::vector<OracleFragment>& f,
                         const ExactLinkMatrix& lm,
                         const std::vector<size_t>& chain, size_t next,
                         int64_t window) {
  const uint32_t from = f[chain.back()].last_tower;
  auto key = [&](size_t c) {
    Rational neg = -lm.P(from, f[c].first_tower);
    return std::make_tuple(neg, f[c].first_start, c);
  };
  for (size_t c : Candidates(f, chain, window)) {
    if (key(c) < key(next)) return false;
  }
  return true;
}

inline std::vector<std::vector<size_t>> GreedyChains(
    const std::vector<OracleFragment>& f, const ExactLinkMatrix& lm,
    size_t target, int64_t window, int max_links) {
  std::vector<std::vector<size_t>> all;
  std::vector<size_t> chain = {target};
  EnumerateChains(f, window, max_links, chain, all);
  std::vector<std::vector<size_t>> greedy;
  for (const auto& c : all) {
    bool ok = true;
    for (size_t k = 1; k < c.size() && ok; ++k) {
      std::vector<size_t> prefix(c.begin(), c.begin() + k);
      ok = IsGreedyStep(f, lm, prefix, c[k], window);
    }
    const bool capped =
        max_links > 0 && static_cast<int>(c.size()) > max_links;
    if (ok && (capped || Candidates(f, c, window).empty())) {
      greedy.push_back(c);
    }
  }
  return greedy;
}

}  // namespace ziptrace::oracle

#endif  // ZIPTRACE_TESTS_ORACLES_LINKER_ORACLE_H_
