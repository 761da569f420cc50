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

#include "doctest.h"

#include <algorithm>

#include "fpstream/lsds.hpp"
#include "fpstream/oracle.hpp"
#include "testutil.hpp"

using namespace fpstream;
using namespace fpstream::test;

namespace {

// First window of the sample stream: batches 1-2 (T1..T4).
Lsds sample_w1() {
  auto stream = sample_stream();
  auto batches = to_batches(stream, 2);
  return build_lsds({batches.begin(), batches.begin() + 2}, 2, 2);
}

// Last window of the sample stream: batches 3-4 (T5..T8).
Lsds sample_w2() {
  auto stream = sample_stream();
  auto batches = to_batches(stream, 2);
  return build_lsds({batches.begin() + 2, batches.end()}, 2, 2);
}

}  // namespace

TEST_CASE("insert_batch indexes each sensor's occurrences") {
  auto stream = sample_stream();
  auto batches = to_batches(stream, 2);
  Lsds s(WindowConfig(2, 2));

  s.insert_batch(batches[0]);
  CHECK(s.co_occurrence(pat({"A"})) == std::vector<Tid>{2});
  CHECK(s.co_occurrence(pat({"C"})) == std::vector<Tid>{2});
  CHECK(s.co_occurrence(pat({"D"})) == std::vector<Tid>{1});
  CHECK(s.co_occurrence(pat({"E"})) == std::vector<Tid>{1});

  s.insert_batch(batches[1]);
  CHECK(s.co_occurrence(pat({"B"})) == std::vector<Tid>{3, 4});
  CHECK(s.co_occurrence(pat({"C"})) == std::vector<Tid>{2, 3});
}

TEST_CASE("insert_batch rejects out-of-order and oversized batches") {
  Lsds s(WindowConfig(2, 2));
  s.insert_batch(Batch(1, {txn(1, {"A"}), txn(2, {"B"})}));
  CHECK_THROWS_AS(s.insert_batch(Batch(3, {txn(3, {"A"})})), Error);
  CHECK_THROWS_AS(s.insert_batch(Batch(2, {txn(3, {"A"}), txn(4, {"A"}), txn(5, {"A"})})),
                  Error);
  CHECK_THROWS_AS(s.insert_batch(Batch(2, {txn(2, {"A"})})), Error);
  // A fresh structure accepts any starting batch number.
  Lsds mid(WindowConfig(2, 2));
  mid.insert_batch(Batch(7, {txn(20, {"A"})}));
  CHECK(mid.batch_numbers() == std::vector<BatchNo>{7});
}

TEST_CASE("a batch of empty transactions is retained but indexes nothing") {
  Lsds s(WindowConfig(2, 2));
  s.insert_batch(Batch(1, {EventTransaction(1, {}), EventTransaction(2, {})}));
  CHECK(s.batch_count() == 1);
  CHECK(s.transaction_count() == 2);
  CHECK(s.dump().empty());
  CHECK(s.events_at_time(1).empty());
}

TEST_CASE("delete_oldest drops the oldest batch everywhere") {
  Lsds s = sample_w1();
  s.delete_oldest();
  CHECK(s.co_occurrence(pat({"A"})) == std::vector<Tid>{4});
  CHECK(s.co_occurrence(pat({"B"})) == std::vector<Tid>{3, 4});
  CHECK(s.co_occurrence(pat({"C"})) == std::vector<Tid>{3});
  CHECK(s.co_occurrence(pat({"D"})) == std::vector<Tid>{3});
  CHECK(s.co_occurrence(pat({"E"})).empty());  // E dropped from the index
  CHECK(s.batch_count() == 1);

  s.delete_oldest();
  CHECK(s.batch_count() == 0);
  CHECK(s.transaction_count() == 0);
  CHECK(s.dump().empty());
  CHECK_THROWS_AS(s.delete_oldest(), Error);
}

TEST_CASE("inserting into a full window slides by one batch") {
  auto stream = sample_stream();
  auto batches = to_batches(stream, 2);
  Lsds s = sample_w1();
  s.insert_batch(batches[2]);
  CHECK(s.batch_numbers() == std::vector<BatchNo>{2, 3});
  CHECK(s.batch_count() == 2);
}

TEST_CASE("events_at_time reconstructs retained transactions") {
  Lsds s = sample_w1();
  CHECK(s.events_at_time(3) == pat({"B", "C", "D"}));
  CHECK(s.events_at_time(1) == pat({"D", "E"}));
  CHECK(s.events_at_time(99).empty());
}

TEST_CASE("co_occurrence intersects tid sets") {
  Lsds w2 = sample_w2();
  CHECK(w2.co_occurrence(pat({"A", "B"})) == std::vector<Tid>{6, 7, 8});
  Lsds w1 = sample_w1();
  CHECK(w1.co_occurrence(pat({"C", "E"})).empty());
  CHECK(w1.co_occurrence(pat({"D"})) == std::vector<Tid>{1, 3});
  CHECK(w1.co_occurrence(pat({"Z"})).empty());
  CHECK_THROWS_AS(w1.co_occurrence({}), Error);
}

TEST_CASE("support counts the intersection") {
  Lsds w2 = sample_w2();
  CHECK(w2.support(pat({"B"})) == 4);
  CHECK(w2.support(pat({"A", "B", "D"})) == 2);
  Lsds w1 = sample_w1();
  CHECK(w1.support(pat({"E"})) == 1);
  CHECK_THROWS_AS(w1.support({}), Error);
}

TEST_CASE("dump is canonical and byte-stable") {
  CHECK(sample_w1().dump() == "A: 2,4\nB: 3,4\nC: 2,3\nD: 1,3\nE: 1\n");
}

TEST_CASE("retained transactions round-trip through the index") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 30; ++round) {
    auto stream = random_stream(rng, 8, 24);
    std::size_t batch_size = 1 + rng() % 3;
    std::size_t m = 1 + rng() % 3;
    auto batches = to_batches(stream, batch_size);
    Lsds s(WindowConfig(m, batch_size));
    for (const Batch& b : batches) {
      s.insert_batch(b);
      for (const EventTransaction& t : s.retained_transactions()) {
        CHECK(s.events_at_time(t.tid()) == t.sensors());
      }
    }
  }
}

TEST_CASE("co_occurrence equals the intersection of singleton tid sets") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 30; ++round) {
    auto stream = random_stream(rng, 6, 20);
    auto batches = to_batches(stream, 2);
    if (batches.empty()) {
      continue;
    }
    Lsds s = build_lsds(batches, 2, 3);
    auto sensors = s.indexed_sensors();
    for (int trial = 0; trial < 10 && !sensors.empty(); ++trial) {
      std::vector<SensorId> pattern;
      for (const SensorId& sensor : sensors) {
        if (rng() % 2 == 0) {
          pattern.push_back(sensor);
        }
      }
      if (pattern.empty()) {
        continue;
      }
      std::vector<Tid> expected = s.co_occurrence({&pattern[0], 1});
      for (std::size_t i = 1; i < pattern.size(); ++i) {
        std::vector<Tid> single = s.co_occurrence({&pattern[i], 1});
        std::vector<Tid> merged;
        std::set_intersection(expected.begin(), expected.end(), single.begin(), single.end(),
                              std::back_inserter(merged));
        expected = std::move(merged);
      }
      CHECK(s.co_occurrence(pattern) == expected);

      // Anti-monotone: dropping a sensor never shrinks support.
      if (pattern.size() > 1) {
        std::vector<SensorId> subset(pattern.begin(), pattern.end() - 1);
        CHECK(s.support(subset) >= s.support(pattern));
      }
    }
  }
}

TEST_CASE("window bound holds under arbitrary insert sequences") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 20; ++round) {
    std::size_t batch_size = 1 + rng() % 4;
    std::size_t m = 1 + rng() % 4;
    auto stream = random_stream(rng, 6, 32);
    Lsds s(WindowConfig(m, batch_size));
    for (const Batch& b : to_batches(stream, batch_size)) {
      s.insert_batch(b);
      CHECK(s.batch_count() <= m);
      CHECK(s.transaction_count() <= m * batch_size);
    }
  }
}

TEST_CASE("a slid window equals a fresh build from the retained batches") {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 30; ++round) {
    std::size_t batch_size = 1 + rng() % 3;
    std::size_t m = 1 + rng() % 3;
    auto stream = random_stream(rng, 8, 30);
    auto batches = to_batches(stream, batch_size);
    Lsds live(WindowConfig(m, batch_size));
    for (std::size_t i = 0; i < batches.size(); ++i) {
      live.insert_batch(batches[i]);
      std::size_t first = i + 1 >= m ? i + 1 - m : 0;
      Lsds fresh = build_lsds({batches.begin() + first, batches.begin() + i + 1}, batch_size, m);
      CHECK(live.dump() == fresh.dump());
      CHECK(live.batch_numbers() == fresh.batch_numbers());
    }
  }
}
