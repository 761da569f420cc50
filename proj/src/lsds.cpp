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

#include "fpstream/lsds.hpp"

#include <algorithm>
#include <sstream>

namespace fpstream {

Lsds::Lsds(WindowConfig cfg) : cfg_(cfg) {}

void Lsds::insert_batch(const Batch& b) {
  if (!batches_.empty() && b.batch_no() != batches_.back().batch_no + 1) {
    throw Error("batch " + std::to_string(b.batch_no()) + " out of order, expected " +
                std::to_string(batches_.back().batch_no + 1));
  }
  if (b.transactions().size() > cfg_.transactions_per_batch) {
    throw Error("batch " + std::to_string(b.batch_no()) + " holds " +
                std::to_string(b.transactions().size()) + " transactions, limit is " +
                std::to_string(cfg_.transactions_per_batch));
  }
  if (!b.transactions().empty() && !transactions_.empty() &&
      b.transactions().front().tid() <= transactions_.back().tid()) {
    throw Error("transaction ids must strictly increase across the stream");
  }
  if (batches_.size() == cfg_.batches_per_window) {
    delete_oldest();
  }
  BatchRecord record{b.batch_no(), {}};
  record.tids.reserve(b.transactions().size());
  for (const EventTransaction& t : b.transactions()) {
    record.tids.push_back(t.tid());
    transactions_.push_back(t);
    for (const SensorId& s : t.sensors()) {
      index_[s].push_back(Occurrence{b.batch_no(), t.tid()});
    }
  }
  batches_.push_back(std::move(record));
}

void Lsds::delete_oldest() {
  if (batches_.empty()) {
    throw Error("cannot delete from an empty window");
  }
  const BatchRecord& oldest = batches_.front();
  // The deleted batch's occurrences form a prefix of every list: lists are
  // sorted by tid and the oldest batch holds the smallest tids.
  for (auto it = index_.begin(); it != index_.end();) {
    std::deque<Occurrence>& list = it->second;
    while (!list.empty() && list.front().batch_no == oldest.batch_no) {
      list.pop_front();
    }
    it = list.empty() ? index_.erase(it) : ++it;
  }
  transactions_.erase(transactions_.begin(),
                      transactions_.begin() + static_cast<std::ptrdiff_t>(oldest.tids.size()));
  batches_.pop_front();
}

std::vector<SensorId> Lsds::events_at_time(Tid tid) const {
  std::vector<SensorId> result;
  for (const auto& [sensor, occurrences] : index_) {
    auto it = std::lower_bound(occurrences.begin(), occurrences.end(), tid,
                               [](const Occurrence& o, Tid t) { return o.tid < t; });
    if (it != occurrences.end() && it->tid == tid) {
      result.push_back(sensor);
    }
  }
  return result;
}

std::vector<Tid> Lsds::co_occurrence(std::span<const SensorId> pattern) const {
  if (pattern.empty()) {
    throw Error("co-occurrence pattern must be non-empty");
  }
  std::vector<Tid> tids;
  bool first = true;
  for (const SensorId& s : pattern) {
    auto it = index_.find(s);
    if (it == index_.end()) {
      return {};
    }
    if (first) {
      tids.reserve(it->second.size());
      for (const Occurrence& o : it->second) {
        tids.push_back(o.tid);
      }
      first = false;
      continue;
    }
    std::vector<Tid> merged;
    merged.reserve(std::min(tids.size(), it->second.size()));
    auto a = tids.begin();
    auto b = it->second.begin();
    while (a != tids.end() && b != it->second.end()) {
      if (*a < b->tid) {
        ++a;
      } else if (b->tid < *a) {
        ++b;
      } else {
        merged.push_back(*a);
        ++a;
        ++b;
      }
    }
    tids = std::move(merged);
    if (tids.empty()) {
      return {};
    }
  }
  return tids;
}

std::int64_t Lsds::support(std::span<const SensorId> pattern) const {
  return static_cast<std::int64_t>(co_occurrence(pattern).size());
}

std::string Lsds::dump() const {
  std::ostringstream os;
  for (const auto& [sensor, occurrences] : index_) {
    os << sensor.str() << ":";
    bool first = true;
    for (const Occurrence& o : occurrences) {
      os << (first ? " " : ",") << o.tid;
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<BatchNo> Lsds::batch_numbers() const {
  std::vector<BatchNo> result;
  result.reserve(batches_.size());
  for (const BatchRecord& r : batches_) {
    result.push_back(r.batch_no);
  }
  return result;
}

std::vector<SensorId> Lsds::indexed_sensors() const {
  std::vector<SensorId> result;
  result.reserve(index_.size());
  for (const auto& [sensor, occurrences] : index_) {
    result.push_back(sensor);
  }
  return result;
}

std::vector<EventTransaction> Lsds::retained_transactions() const {
  return {transactions_.begin(), transactions_.end()};
}

const EventTransaction* Lsds::find_transaction(Tid tid) const {
  auto it = std::lower_bound(
      transactions_.begin(), transactions_.end(), tid,
      [](const EventTransaction& t, Tid value) { return t.tid() < value; });
  return it != transactions_.end() && it->tid() == tid ? &*it : nullptr;
}

std::size_t Lsds::index_entry_count() const {
  std::size_t count = 0;
  for (const auto& [sensor, occurrences] : index_) {
    count += occurrences.size();
  }
  return count;
}

}  // namespace fpstream
