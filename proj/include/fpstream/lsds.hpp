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

#ifndef FPSTREAM_LSDS_HPP
#define FPSTREAM_LSDS_HPP

#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fpstream/model.hpp"

namespace fpstream {

// Linked Sensor Data Stream: a vertical index over the current window.
// Each sensor maps to its ordered list of (batch, tid) occurrences; only ON
// events are stored, so the sparse stream costs no dead cells. The window
// retains at most batches_per_window batches and slides a whole batch at a
// time.
//
// Single-writer structure: one ingesting context mutates it, reads happen
// between batch insertions.
class Lsds {
 public:
  explicit Lsds(WindowConfig cfg);

  // Appends a batch. Batch numbers must be consecutive (any start value is
  // accepted on an empty structure). When the window already holds
  // batches_per_window batches, the oldest is deleted first, so callers
  // never orchestrate the slide themselves. A batch smaller than
  // transactions_per_batch is accepted (final partial batch at stream end);
  // a larger one is an error.
  void insert_batch(const Batch& b);

  // Drops the oldest retained batch and every index entry that references
  // it. Sensors whose occurrence lists drain are removed from the index.
  void delete_oldest();

  // The sensor set of the retained transaction tid; empty when tid is not
  // retained. Resolved per sensor against the index, not the transaction
  // store.
  std::vector<SensorId> events_at_time(Tid tid) const;

  // Tids of retained transactions containing every sensor of the pattern:
  // the intersection of the per-sensor tid sets. Empty if any sensor is
  // unindexed. The pattern must be non-empty.
  std::vector<Tid> co_occurrence(std::span<const SensorId> pattern) const;

  // |co_occurrence(pattern)|.
  std::int64_t support(std::span<const SensorId> pattern) const;

  // Debug dump, one line per sensor in canonical order:
  //   sensor: tid,tid,...
  // Byte-exact across runs for the same content.
  std::string dump() const;

  const WindowConfig& config() const { return cfg_; }
  std::size_t batch_count() const { return batches_.size(); }
  std::size_t transaction_count() const { return transactions_.size(); }
  std::vector<BatchNo> batch_numbers() const;

  // Sensors currently indexed, canonical order.
  std::vector<SensorId> indexed_sensors() const;

  // Retained transactions oldest first (including empty ones).
  std::vector<EventTransaction> retained_transactions() const;

  // Retained transaction for tid, or nullptr when tid is not retained.
  const EventTransaction* find_transaction(Tid tid) const;

  // Total occurrence entries across all sensors; the sparse analogue of the
  // dense matrix's ON cells.
  std::size_t index_entry_count() const;

 private:
  struct Occurrence {
    BatchNo batch_no;
    Tid tid;
  };
  struct BatchRecord {
    BatchNo batch_no;
    std::vector<Tid> tids;
  };

  WindowConfig cfg_;
  std::deque<BatchRecord> batches_;
  // Occurrence lists are deques: batches append at the back and the slide
  // pops the expired batch's prefix off the front.
  std::map<SensorId, std::deque<Occurrence>> index_;
  // Retained transactions in tid order; tids only ever grow, so this stays
  // sorted with O(1) appends and expiries.
  std::deque<EventTransaction> transactions_;
};

}  // namespace fpstream

#endif  // FPSTREAM_LSDS_HPP
