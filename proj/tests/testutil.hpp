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

#ifndef FPSTREAM_TESTS_TESTUTIL_HPP
#define FPSTREAM_TESTS_TESTUTIL_HPP

#include <random>
#include <span>
#include <string>
#include <vector>

#include "fpstream/cli.hpp"
#include "fpstream/fpstree.hpp"
#include "fpstream/lsds.hpp"
#include "fpstream/miner.hpp"
#include "fpstream/model.hpp"
#include "fpstream/oracle.hpp"

namespace fpstream::test {

inline SensorId sid(const std::string& s) { return SensorId(s); }

inline std::vector<SensorId> pat(std::initializer_list<const char*> names) {
  std::vector<SensorId> p;
  for (const char* n : names) {
    p.emplace_back(n);
  }
  return p;
}

inline EventTransaction txn(Tid tid, std::initializer_list<const char*> names) {
  std::vector<SensorId> sensors;
  for (const char* n : names) {
    sensors.emplace_back(n);
  }
  return EventTransaction(tid, std::move(sensors));
}

// Eight-slot sample stream over sensors A..E used as the golden dataset:
// two-transaction batches give four batches; the first window is batches
// 1-2 and the last is batches 3-4.
inline std::vector<EventTransaction> sample_stream() {
  return {
      txn(1, {"D", "E"}),      txn(2, {"A", "C"}),      txn(3, {"B", "C", "D"}),
      txn(4, {"A", "B"}),      txn(5, {"B", "E"}),      txn(6, {"A", "B", "D"}),
      txn(7, {"A", "B", "C"}), txn(8, {"A", "B", "D", "E"}),
  };
}

inline std::string sample_jsonl() {
  std::string s;
  for (const EventTransaction& t : sample_stream()) {
    s += serialize_transaction(t) + "\n";
  }
  return s;
}

// Power ratings used with the sample stream.
inline UtilityTable sample_table() {
  UtilityTable u;
  u.set(sid("A"), Watts::whole(3));
  u.set(sid("B"), Watts::whole(1));
  u.set(sid("C"), Watts::whole(4));
  u.set(sid("D"), Watts::whole(2));
  u.set(sid("E"), Watts::whole(5));
  return u;
}

// Slices a stream into consecutive batches of batch_size (dropping any
// trailing partial batch), numbered from start_no.
inline std::vector<Batch> to_batches(std::span<const EventTransaction> stream,
                                     std::size_t batch_size, BatchNo start_no = 1) {
  std::vector<Batch> batches;
  for (std::size_t i = 0; i + batch_size <= stream.size(); i += batch_size) {
    std::vector<EventTransaction> txns(stream.begin() + i, stream.begin() + i + batch_size);
    batches.emplace_back(start_no++, std::move(txns));
  }
  return batches;
}

inline Lsds build_lsds(std::span<const Batch> batches, std::size_t batch_size, std::size_t m) {
  Lsds s(WindowConfig(m, batch_size));
  for (const Batch& b : batches) {
    s.insert_batch(b);
  }
  return s;
}

inline void tree_insert_batch(FpsTree& tree, const Batch& b, const UtilityTable& u) {
  tree.begin_batch();
  for (const EventTransaction& t : b.transactions()) {
    if (t.empty()) {
      continue;
    }
    std::int64_t weight =
        tree.mode() == FpsTree::Mode::count ? 1 : transaction_utility(t, u).micros();
    tree.insert_transaction(t, weight);
  }
}

inline FpsTree build_tree(std::span<const Batch> batches, std::size_t batch_size, std::size_t m,
                          FpsTree::Mode mode, const UtilityTable& u) {
  FpsTree tree(WindowConfig(m, batch_size), mode);
  for (const Batch& b : batches) {
    tree_insert_batch(tree, b, u);
  }
  return tree;
}

// Random stream of up to max_txns transactions over up to max_sensors
// single-letter sensors; occasionally generates empty transactions.
inline std::vector<EventTransaction> random_stream(std::mt19937_64& rng, int max_sensors,
                                                   int max_txns) {
  int n_sensors = 1 + static_cast<int>(rng() % max_sensors);
  int n_txns = 1 + static_cast<int>(rng() % max_txns);
  std::vector<EventTransaction> stream;
  stream.reserve(n_txns);
  for (int t = 1; t <= n_txns; ++t) {
    std::vector<SensorId> on;
    for (int s = 0; s < n_sensors; ++s) {
      if (rng() % 100 < 35) {
        on.emplace_back(std::string(1, static_cast<char>('a' + s)));
      }
    }
    stream.emplace_back(t, std::move(on));
  }
  return stream;
}

// Random table covering sensors a.. up to max_sensors letters; watt values
// include zero and half-watt entries to exercise fixed-point paths.
inline UtilityTable random_table(std::mt19937_64& rng, int max_sensors) {
  UtilityTable u;
  for (int s = 0; s < max_sensors; ++s) {
    std::int64_t micros = 500000 * static_cast<std::int64_t>(rng() % 9);  // 0, 0.5, ..., 4
    u.set(SensorId(std::string(1, static_cast<char>('a' + s))), Watts::from_micros(micros));
  }
  return u;
}

inline WindowSnapshot window_of(const Lsds& s) {
  return WindowSnapshot(s.retained_transactions());
}

}  // namespace fpstream::test

#endif  // FPSTREAM_TESTS_TESTUTIL_HPP
