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

#ifndef FPSTREAM_ORACLE_HPP
#define FPSTREAM_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fpstream/miner.hpp"
#include "fpstream/model.hpp"

// Brute-force reference implementations for desk-scale windows. These share
// only the domain types with the engine, never its structures or mining
// code; they exist to derive expected values and cross-check every mining
// path. Exponential cost is fine here.

namespace fpstream {

// A plain list of window transactions plus the sensor universe appearing in
// them. Exhaustive enumeration is bounded to 16 sensors / 32 transactions.
class WindowSnapshot {
 public:
  explicit WindowSnapshot(std::vector<EventTransaction> transactions);

  const std::vector<EventTransaction>& transactions() const { return transactions_; }
  const std::vector<SensorId>& sensors() const { return sensors_; }

 private:
  std::vector<EventTransaction> transactions_;
  std::vector<SensorId> sensors_;
};

// Transactions containing the pattern, counted by direct scan.
std::int64_t oracle_support(const WindowSnapshot& w, std::span<const SensorId> pattern);

// support(pattern) * sum of external utilities over the pattern.
Watts oracle_utility(const WindowSnapshot& w, std::span<const SensorId> pattern,
                     const UtilityTable& u);

// twu(pattern): sum of transaction utilities over containing transactions.
Watts oracle_twu(const WindowSnapshot& w, std::span<const SensorId> pattern,
                 const UtilityTable& u);

// Every non-empty sensor subset with support >= 1, with exact support and
// utility, sorted (size, lexicographic). Throws when the window exceeds the
// enumeration bounds.
std::vector<PatternResult> oracle_pattern_table(const WindowSnapshot& w, const UtilityTable& u);

// Exhaustive mining per the request thresholds. Frequent-mode results carry
// utility 0, mirroring the engine's report schema.
MiningResult oracle_mine(const WindowSnapshot& w, const MiningRequest& request,
                         const UtilityTable& u, std::int64_t window_id = 0);

}  // namespace fpstream

#endif  // FPSTREAM_ORACLE_HPP
