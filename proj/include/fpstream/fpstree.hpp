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

#ifndef FPSTREAM_FPSTREE_HPP
#define FPSTREAM_FPSTREE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpstream/model.hpp"

namespace fpstream {

struct FpsNode;

// Per-sensor aggregate: window-wide weight plus the chain of that sensor's
// tree nodes.
struct FpsHeaderRow {
  std::int64_t total = 0;  // kept equal to the sum over the sensor's nodes
  FpsNode* head = nullptr;
  FpsNode* tail = nullptr;
};

// Tree node: a sensor plus one accumulated weight per batch slot of the
// window, oldest batch first in logical order. The tree stores the slots as
// a ring (see FpsTree) so a slide evicts one cell per node instead of
// shifting arrays. Children are kept sorted, so root-to-node paths visit
// sensors in strictly increasing canonical order. Node storage lives in the
// owning tree's arena.
struct FpsNode {
  std::optional<SensorId> sensor;   // nullopt only at the root sentinel
  std::vector<std::int64_t> slots;  // physical ring storage
  std::int64_t total = 0;           // sum of slots, maintained incrementally
  FpsNode* parent = nullptr;
  FpsNode* node_link = nullptr;       // next node carrying the same sensor
  FpsNode* node_link_prev = nullptr;  // previous node on the same chain
  FpsHeaderRow* header_row = nullptr;
  std::vector<std::pair<SensorId, FpsNode*>> children;  // sorted by sensor

  std::int64_t counter_total() const { return total; }
  FpsNode* find_child(const SensorId& s) const;
};

// Frequent Pattern Stream tree: a prefix tree over canonical sensor order
// whose per-node counter arrays make window slides a one-slot left shift
// plus pruning of all-zero nodes, with no restructuring. Slides touch only
// the nodes the evicted batch reached, via per-slot touch lists; pruned
// nodes are recycled through a free list to keep the live tree compact.
//
// One implementation serves both measures: in count mode every insertion
// carries weight 1, so totals are supports; in utility mode the weight is
// the transaction utility (micro-watts), so totals are transaction-weighted
// utilities. Zero-weight insertions leave the tree unchanged.
//
// Single-writer structure; snapshot() hands out an isolated deep copy for
// mining while ingestion continues.
class FpsTree {
 public:
  enum class Mode { count, utility };
  using HeaderRow = FpsHeaderRow;

  FpsTree(WindowConfig cfg, Mode mode);

  FpsTree(const FpsTree& other);
  FpsTree& operator=(const FpsTree& other);
  FpsTree(FpsTree&&) noexcept = default;
  FpsTree& operator=(FpsTree&&) noexcept = default;

  // Opens the slot for the next batch: the next empty slot while the window
  // is filling, otherwise a slide first and then the last slot again.
  void begin_batch();

  // Adds one root-to-leaf path for the transaction's sensors (canonical
  // order), increasing the current slot by weight along it. New nodes start
  // with all-zero counter arrays and are appended to their sensor's header
  // chain.
  void insert_transaction(const EventTransaction& t, std::int64_t weight);

  // Shifts every node's counters left by one slot (zeroing the last),
  // updates header totals, and removes nodes whose arrays drained to all
  // zeros. No-op on an empty tree.
  void slide_window();

  // Window-wide accumulated weight for a sensor; 0 when absent. Support of
  // the singleton in count mode, its transaction-weighted utility in
  // utility mode.
  std::int64_t header_total(const SensorId& sensor) const;

  // Isolated copy for mining: later inserts and slides on this tree do not
  // affect it.
  FpsTree snapshot() const { return *this; }

  // Deterministic pre-order dump, children in canonical order, one node per
  // line: "depth sensor [c0,...,cM-1]".
  std::string dump() const;

  Mode mode() const { return mode_; }
  const WindowConfig& config() const { return cfg_; }
  const FpsNode* root() const { return root_; }
  const std::map<SensorId, HeaderRow>& header() const { return header_; }

  // (sensor, total) pairs in canonical order; for structural comparisons.
  std::vector<std::pair<SensorId, std::int64_t>> header_rows() const;

  // Logical slot that insert_transaction currently writes; -1 before the
  // first begin_batch.
  int current_slot() const { return current_slot_; }

  // A node's counters in logical order, oldest retained batch first.
  std::vector<std::int64_t> counters_of(const FpsNode& node) const;

  std::size_t node_count() const;

 private:
  std::size_t physical(std::size_t logical_slot) const {
    return (base_slot_ + logical_slot) % cfg_.batches_per_window;
  }
  FpsNode* allocate_node();
  FpsNode* link_new_child(FpsNode* parent, const SensorId& sensor,
                          std::vector<std::pair<SensorId, FpsNode*>>::iterator pos);
  void rebuild_header_and_touch_lists();

  WindowConfig cfg_;
  Mode mode_;
  std::deque<FpsNode> arena_;     // owns every node, including recycled ones
  std::vector<FpsNode*> free_;    // recycled nodes, hottest last
  FpsNode* root_ = nullptr;
  std::map<SensorId, HeaderRow> header_;
  // Per physical slot, the nodes holding weight in it, ancestors before
  // descendants. Covers exactly the nodes a slide must visit.
  std::vector<std::vector<FpsNode*>> slot_nodes_;
  std::size_t slots_used_ = 0;
  std::size_t base_slot_ = 0;  // physical position of logical slot 0
  int current_slot_ = -1;
};

}  // namespace fpstream

#endif  // FPSTREAM_FPSTREE_HPP
