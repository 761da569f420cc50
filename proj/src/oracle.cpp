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

#include "fpstream/oracle.hpp"

#include <algorithm>
#include <set>

namespace fpstream {

namespace {

constexpr std::size_t kMaxSensors = 16;
constexpr std::size_t kMaxTransactions = 32;

bool contains_all(const EventTransaction& t, std::span<const SensorId> pattern) {
  for (const SensorId& s : pattern) {
    if (!t.contains(s)) {
      return false;
    }
  }
  return true;
}

void check_bounds(const WindowSnapshot& w) {
  if (w.sensors().size() > kMaxSensors || w.transactions().size() > kMaxTransactions) {
    throw Error("window too large for exhaustive enumeration (" +
                std::to_string(w.sensors().size()) + " sensors, " +
                std::to_string(w.transactions().size()) + " transactions)");
  }
}

}  // namespace

WindowSnapshot::WindowSnapshot(std::vector<EventTransaction> transactions)
    : transactions_(std::move(transactions)) {
  std::set<SensorId> universe;
  for (const EventTransaction& t : transactions_) {
    universe.insert(t.sensors().begin(), t.sensors().end());
  }
  sensors_.assign(universe.begin(), universe.end());
}

std::int64_t oracle_support(const WindowSnapshot& w, std::span<const SensorId> pattern) {
  if (pattern.empty()) {
    throw Error("pattern must be non-empty");
  }
  std::int64_t count = 0;
  for (const EventTransaction& t : w.transactions()) {
    if (contains_all(t, pattern)) {
      ++count;
    }
  }
  return count;
}

Watts oracle_utility(const WindowSnapshot& w, std::span<const SensorId> pattern,
                     const UtilityTable& u) {
  return pattern_unit_utility(pattern, oracle_support(w, pattern), u);
}

Watts oracle_twu(const WindowSnapshot& w, std::span<const SensorId> pattern,
                 const UtilityTable& u) {
  if (pattern.empty()) {
    throw Error("pattern must be non-empty");
  }
  Watts total;
  for (const EventTransaction& t : w.transactions()) {
    if (contains_all(t, pattern)) {
      total += transaction_utility(t, u);
    }
  }
  return total;
}

std::vector<PatternResult> oracle_pattern_table(const WindowSnapshot& w, const UtilityTable& u) {
  check_bounds(w);
  const std::vector<SensorId>& universe = w.sensors();
  const std::size_t k = universe.size();

  std::vector<std::uint32_t> txn_masks;
  txn_masks.reserve(w.transactions().size());
  for (const EventTransaction& t : w.transactions()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (t.contains(universe[i])) {
        mask |= 1u << i;
      }
    }
    txn_masks.push_back(mask);
  }

  std::vector<Watts> eu(k);
  for (std::size_t i = 0; i < k; ++i) {
    eu[i] = u.external_utility(universe[i]);
  }

  std::vector<PatternResult> table;
  for (std::uint32_t subset = 1; k > 0 && subset < (1u << k); ++subset) {
    std::int64_t support = 0;
    for (std::uint32_t mask : txn_masks) {
      if ((mask & subset) == subset) {
        ++support;
      }
    }
    if (support == 0) {
      continue;
    }
    PatternResult r;
    Watts per_occurrence;
    for (std::size_t i = 0; i < k; ++i) {
      if (subset & (1u << i)) {
        r.pattern.push_back(universe[i]);
        per_occurrence += eu[i];
      }
    }
    r.support = support;
    r.utility = per_occurrence.times(support);
    table.push_back(std::move(r));
  }
  std::sort(table.begin(), table.end(), pattern_result_less);
  return table;
}

MiningResult oracle_mine(const WindowSnapshot& w, const MiningRequest& request,
                         const UtilityTable& u, std::int64_t window_id) {
  MiningResult result;
  result.window_id = window_id;

  std::int64_t min_support = request.min_support;
  Watts min_utility = request.min_utility;
  if (request.threshold_kind == ThresholdKind::fraction_of_window_total) {
    if (request.mode != MiningMode::high_utility) {
      throw Error("fraction thresholds apply to utility mining only");
    }
    Watts total;
    for (const EventTransaction& t : w.transactions()) {
      total += transaction_utility(t, u);
    }
    min_utility = total.fraction_ceil(request.min_utility);
  }
  if (request.mode == MiningMode::frequent && min_support < 1) {
    throw Error("min_support must be >= 1");
  }

  // Frequent mining ignores utilities; enumerate with the unit table so no
  // utility entries are required.
  const UtilityTable& table =
      request.mode == MiningMode::frequent ? UtilityTable::unit() : u;
  for (PatternResult& candidate : oracle_pattern_table(w, table)) {
    if (request.mode == MiningMode::frequent) {
      if (candidate.support >= min_support) {
        candidate.utility = Watts();
        candidate.window_id = window_id;
        result.patterns.push_back(std::move(candidate));
      }
    } else {
      if (candidate.utility >= min_utility) {
        candidate.window_id = window_id;
        result.patterns.push_back(std::move(candidate));
      }
    }
  }
  return result;
}

}  // namespace fpstream
