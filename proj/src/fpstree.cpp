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

#include "fpstream/fpstree.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fpstream {

namespace {

auto child_less = [](const std::pair<SensorId, FpsNode*>& entry, const SensorId& s) {
  return entry.first < s;
};

}  // namespace

FpsNode* FpsNode::find_child(const SensorId& s) const {
  auto it = std::lower_bound(children.begin(), children.end(), s, child_less);
  return it != children.end() && it->first == s ? it->second : nullptr;
}

FpsTree::FpsTree(WindowConfig cfg, Mode mode)
    : cfg_(cfg), mode_(mode), slot_nodes_(cfg.batches_per_window) {
  root_ = allocate_node();
}

FpsNode* FpsTree::allocate_node() {
  FpsNode* node;
  if (!free_.empty()) {
    node = free_.back();
    free_.pop_back();
  } else {
    node = &arena_.emplace_back();
  }
  node->sensor.reset();
  node->slots.assign(cfg_.batches_per_window, 0);
  node->total = 0;
  node->parent = nullptr;
  node->node_link = nullptr;
  node->node_link_prev = nullptr;
  node->header_row = nullptr;
  node->children.clear();
  return node;
}

// Chains and touch lists are rebuilt in pre-order, which preserves the
// ancestors-before-descendants ordering the slide relies on. Mining does
// not depend on chain order and totals are order-free.
void FpsTree::rebuild_header_and_touch_lists() {
  struct Walker {
    FpsTree* tree;
    void walk(FpsNode& node) {
      for (const auto& [sensor, child] : node.children) {
        HeaderRow& row = tree->header_[sensor];
        row.total += child->total;
        child->header_row = &row;
        child->node_link_prev = row.tail;
        if (row.tail == nullptr) {
          row.head = row.tail = child;
        } else {
          row.tail->node_link = child;
          row.tail = child;
        }
        for (std::size_t slot = 0; slot < child->slots.size(); ++slot) {
          if (child->slots[slot] != 0) {
            tree->slot_nodes_[slot].push_back(child);
          }
        }
        walk(*child);
      }
    }
  };
  Walker{this}.walk(*root_);
}

FpsTree::FpsTree(const FpsTree& other)
    : cfg_(other.cfg_),
      mode_(other.mode_),
      slot_nodes_(other.cfg_.batches_per_window),
      slots_used_(other.slots_used_),
      base_slot_(other.base_slot_),
      current_slot_(other.current_slot_) {
  struct Cloner {
    FpsTree* tree;
    FpsNode* clone(const FpsNode& src, FpsNode* parent) {
      FpsNode* copy = tree->allocate_node();
      copy->sensor = src.sensor;
      copy->slots = src.slots;
      copy->total = src.total;
      copy->parent = parent;
      copy->children.reserve(src.children.size());
      for (const auto& [sensor, child] : src.children) {
        copy->children.emplace_back(sensor, clone(*child, copy));
      }
      return copy;
    }
  };
  root_ = Cloner{this}.clone(*other.root_, nullptr);
  rebuild_header_and_touch_lists();
}

FpsTree& FpsTree::operator=(const FpsTree& other) {
  if (this != &other) {
    FpsTree copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void FpsTree::begin_batch() {
  if (slots_used_ == cfg_.batches_per_window) {
    slide_window();
  }
  current_slot_ = static_cast<int>(slots_used_);
  ++slots_used_;
}

FpsNode* FpsTree::link_new_child(FpsNode* parent, const SensorId& sensor,
                                 std::vector<std::pair<SensorId, FpsNode*>>::iterator pos) {
  FpsNode* child = allocate_node();
  child->sensor = sensor;
  child->parent = parent;
  HeaderRow& row = header_[sensor];
  child->header_row = &row;
  child->node_link_prev = row.tail;
  if (row.tail == nullptr) {
    row.head = row.tail = child;
  } else {
    row.tail->node_link = child;
    row.tail = child;
  }
  parent->children.emplace(pos, sensor, child);
  return child;
}

void FpsTree::insert_transaction(const EventTransaction& t, std::int64_t weight) {
  if (t.empty()) {
    throw Error("cannot insert an empty transaction");
  }
  if (weight < 0) {
    throw Error("insertion weight must be non-negative");
  }
  if (current_slot_ < 0) {
    throw Error("no batch slot open; call begin_batch first");
  }
  if (weight == 0) {
    return;
  }
  const std::size_t slot = physical(static_cast<std::size_t>(current_slot_));
  FpsNode* node = root_;
  for (const SensorId& s : t.sensors()) {
    auto pos = std::lower_bound(node->children.begin(), node->children.end(), s, child_less);
    FpsNode* child = pos != node->children.end() && pos->first == s
                         ? pos->second
                         : link_new_child(node, s, pos);
    if (child->slots[slot] == 0) {
      slot_nodes_[slot].push_back(child);
    }
    child->slots[slot] += weight;
    child->total += weight;
    child->header_row->total += weight;
    node = child;
  }
}

void FpsTree::slide_window() {
  // Only nodes holding weight in the evicted slot can change; the touch
  // list records exactly those, ancestors first. Walking it backwards makes
  // every drained node lose its (already drained) children before it is
  // detached itself.
  std::vector<FpsNode*>& touched = slot_nodes_[base_slot_];
  for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
    FpsNode* node = *it;
    HeaderRow& row = *node->header_row;
    std::int64_t evicted = node->slots[base_slot_];
    node->slots[base_slot_] = 0;
    node->total -= evicted;
    row.total -= evicted;
    if (node->total != 0) {
      continue;
    }
    // A transaction increments every node on its path equally, so a drained
    // node cannot have a surviving nonzero descendant.
    assert(node->children.empty());
    if (node->node_link_prev != nullptr) {
      node->node_link_prev->node_link = node->node_link;
    } else {
      row.head = node->node_link;
    }
    if (node->node_link != nullptr) {
      node->node_link->node_link_prev = node->node_link_prev;
    } else {
      row.tail = node->node_link_prev;
    }
    FpsNode* parent = node->parent;
    auto pos = std::lower_bound(parent->children.begin(), parent->children.end(),
                                *node->sensor, child_less);
    parent->children.erase(pos);
    if (row.head == nullptr) {
      assert(row.total == 0);
      header_.erase(*node->sensor);
    }
    free_.push_back(node);
  }
  touched.clear();
  base_slot_ = (base_slot_ + 1) % cfg_.batches_per_window;
  if (slots_used_ > 0) {
    --slots_used_;
  }
  if (current_slot_ >= 0) {
    --current_slot_;
  }
}

std::int64_t FpsTree::header_total(const SensorId& sensor) const {
  auto it = header_.find(sensor);
  return it == header_.end() ? 0 : it->second.total;
}

std::vector<std::int64_t> FpsTree::counters_of(const FpsNode& node) const {
  std::vector<std::int64_t> logical(node.slots.size());
  for (std::size_t j = 0; j < logical.size(); ++j) {
    logical[j] = node.slots[physical(j)];
  }
  return logical;
}

namespace {

void dump_node(const FpsTree& tree, const FpsNode& node, int depth, std::ostream& os) {
  if (node.sensor) {
    os << depth << ' ' << node.sensor->str() << " [";
    std::vector<std::int64_t> counters = tree.counters_of(node);
    for (std::size_t i = 0; i < counters.size(); ++i) {
      if (i > 0) {
        os << ',';
      }
      os << counters[i];
    }
    os << "]\n";
  }
  for (const auto& [sensor, child] : node.children) {
    dump_node(tree, *child, depth + 1, os);
  }
}

std::size_t count_nodes(const FpsNode& node) {
  std::size_t n = node.sensor ? 1 : 0;
  for (const auto& [sensor, child] : node.children) {
    n += count_nodes(*child);
  }
  return n;
}

}  // namespace

std::string FpsTree::dump() const {
  std::ostringstream os;
  dump_node(*this, *root_, 0, os);
  return os.str();
}

std::vector<std::pair<SensorId, std::int64_t>> FpsTree::header_rows() const {
  std::vector<std::pair<SensorId, std::int64_t>> rows;
  rows.reserve(header_.size());
  for (const auto& [sensor, row] : header_) {
    rows.emplace_back(sensor, row.total);
  }
  return rows;
}

std::size_t FpsTree::node_count() const { return count_nodes(*root_); }

}  // namespace fpstream
