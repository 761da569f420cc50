// Copyright 2026, the fpstream developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPSTREAM_MINER_HPP
#define FPSTREAM_MINER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fpstream/fpstree.hpp"
#include "fpstream/lsds.hpp"
#include "fpstream/model.hpp"

namespace fpstream {

enum class MiningMode { frequent, high_utility };
enum class ThresholdKind { absolute, fraction_of_window_total };

struct MiningRequest {
  MiningMode mode = MiningMode::frequent;
  std::int64_t min_support = 1;  // frequent mode
  Watts min_utility;             // high-utility mode
  ThresholdKind threshold_kind = ThresholdKind::absolute;
};

// Patterns sorted by (size ascending, lexicographic); no duplicates, every
// entry meets its threshold.
struct MiningResult {
  std::int64_t window_id = 0;
  std::vector<PatternResult> patterns;

  friend bool operator==(const MiningResult&, const MiningResult&) = default;
};

// JSONL, one pattern per line, stable ordering:
//   {"window": <int>, "pattern": ["A","B"], "support": <int>, "utility": <decimal>}
std::string serialize_result(const MiningResult& result);

// All patterns with support >= min_support, with exact supports, mined by
// pattern growth over conditional bases of a count-mode tree. Utility
// fields are 0 (no table is involved in count mining).
MiningResult mine_frequent(const FpsTree& view, std::int64_t min_support,
                           std::int64_t window_id = 0);

// Same contract as mine_frequent, computed by depth-first tid-set
// intersection over the vertical index. Independent code path kept for
// cross-validation; the two must agree on every window and threshold.
MiningResult mine_frequent_lsds(const Lsds& s, std::int64_t min_support,
                                std::int64_t window_id = 0);

// Phase I of high-utility mining: candidate patterns whose
// transaction-weighted utility reaches min_utility, grown over the
// utility-mode tree. twu overestimates the true utility, so the candidate
// set is a superset of the high-utility set. Each result's utility field
// holds the pattern's twu; supports are not computed here. A zero threshold
// falls back to enumerating every pattern with support >= 1 from the index,
// where twu pruning would be vacuous anyway.
std::vector<PatternResult> hup_candidates(const FpsTree& view, const Lsds& s,
                                          const UtilityTable& u, Watts min_utility);

// Two-phase high-utility mining: Phase I candidates, then exact utilities
// support(X) * sum of eu over X via the vertical index, keeping patterns
// whose utility reaches min_utility.
MiningResult mine_hup(const FpsTree& view, const Lsds& s, const UtilityTable& u,
                      Watts min_utility, std::int64_t window_id = 0);

// Sum of transaction utilities over the retained window; the base for
// fraction-of-window-total thresholds.
Watts window_total_utility(const Lsds& s, const UtilityTable& u);

// Re-mines the already-built structures at a new threshold; equivalent to
// mining a freshly built window at that threshold.
MiningResult remine(const FpsTree& view, const Lsds& s, const UtilityTable& u,
                    const MiningRequest& request, std::int64_t window_id = 0);

}  // namespace fpstream

#endif  // FPSTREAM_MINER_HPP
