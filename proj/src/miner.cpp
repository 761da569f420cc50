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

#include "fpstream/miner.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace fpstream {

namespace {

// Working tree for pattern growth. The top level mirrors the snapshot with
// per-node window totals; deeper levels are conditional projections. Weights
// are supports in count mode and transaction-weighted utilities in utility
// mode.
struct GrowthNode {
  GrowthNode* parent = nullptr;
  GrowthNode* link = nullptr;
  const SensorId* sensor = nullptr;
  std::int64_t weight = 0;
  std::map<SensorId, std::unique_ptr<GrowthNode>> children;
};

struct GrowthTree {
  std::unique_ptr<GrowthNode> root = std::make_unique<GrowthNode>();
  struct Row {
    std::int64_t total = 0;
    GrowthNode* head = nullptr;
    GrowthNode* tail = nullptr;
  };
  std::map<SensorId, Row> header;

  void link_node(const SensorId& sensor, GrowthNode* node) {
    Row& row = header[sensor];
    if (row.tail == nullptr) {
      row.head = row.tail = node;
    } else {
      row.tail->link = node;
      row.tail = node;
    }
  }

  // Path sensors must arrive in canonical order.
  void insert_path(const std::vector<const SensorId*>& path, std::int64_t weight) {
    GrowthNode* node = root.get();
    for (const SensorId* s : path) {
      auto it = node->children.find(*s);
      if (it == node->children.end()) {
        auto child = std::make_unique<GrowthNode>();
        child->parent = node;
        it = node->children.emplace(*s, std::move(child)).first;
        it->second->sensor = &it->first;
        link_node(*s, it->second.get());
      }
      it->second->weight += weight;
      header[*s].total += weight;
      node = it->second.get();
    }
  }
};

GrowthTree mirror_snapshot(const FpsTree& view) {
  GrowthTree tree;
  struct Walker {
    GrowthTree* out;
    void walk(const FpsNode& node, GrowthNode* target) {
      for (const auto& [sensor, child] : node.children) {
        auto copy = std::make_unique<GrowthNode>();
        copy->parent = target;
        copy->weight = child->counter_total();
        auto it = target->children.emplace(sensor, std::move(copy)).first;
        it->second->sensor = &it->first;
        out->link_node(sensor, it->second.get());
        out->header[sensor].total += it->second->weight;
        walk(*child, it->second.get());
      }
    }
  };
  Walker{&tree}.walk(*view.root(), tree.root.get());
  return tree;
}

// Conditional projection: for every node carrying the suffix item, its
// root-ward prefix path weighted by that node's weight.
GrowthTree project(const GrowthNode* chain_head) {
  GrowthTree tree;
  for (const GrowthNode* node = chain_head; node != nullptr; node = node->link) {
    if (node->weight == 0) {
      continue;
    }
    std::vector<const SensorId*> path;
    for (const GrowthNode* up = node->parent; up != nullptr && up->sensor != nullptr;
         up = up->parent) {
      path.push_back(up->sensor);
    }
    std::reverse(path.begin(), path.end());
    tree.insert_path(path, node->weight);
  }
  return tree;
}

// Emits every pattern whose accumulated weight reaches threshold. suffix
// holds already-fixed items, all canonically greater than any header item
// of the current projection.
void grow(const GrowthTree& tree, std::int64_t threshold, std::vector<SensorId>& suffix,
          std::vector<PatternResult>& out) {
  for (const auto& [sensor, row] : tree.header) {
    if (row.total < threshold) {
      continue;
    }
    PatternResult r;
    r.pattern.reserve(suffix.size() + 1);
    r.pattern.push_back(sensor);
    r.pattern.insert(r.pattern.end(), suffix.rbegin(), suffix.rend());
    r.support = row.total;
    out.push_back(std::move(r));

    GrowthTree conditional = project(row.head);
    suffix.push_back(sensor);
    grow(conditional, threshold, suffix, out);
    suffix.pop_back();
  }
}

std::vector<PatternResult> grow_patterns(const FpsTree& view, std::int64_t threshold) {
  GrowthTree top = mirror_snapshot(view);
  std::vector<PatternResult> out;
  std::vector<SensorId> suffix;
  grow(top, threshold, suffix, out);
  return out;
}

void sort_patterns(std::vector<PatternResult>& patterns) {
  std::sort(patterns.begin(), patterns.end(), pattern_result_less);
}

void lsds_extend(const Lsds& s, std::span<const SensorId> sensors, std::size_t from,
                 const std::vector<Tid>& base_tids, std::vector<SensorId>& pattern,
                 std::int64_t min_support, std::vector<PatternResult>& out) {
  for (std::size_t i = from; i < sensors.size(); ++i) {
    pattern.push_back(sensors[i]);
    std::vector<Tid> tids;
    if (pattern.size() == 1) {
      tids = s.co_occurrence(std::span<const SensorId>(&sensors[i], 1));
    } else {
      const std::vector<Tid>& single = s.co_occurrence(std::span<const SensorId>(&sensors[i], 1));
      std::set_intersection(base_tids.begin(), base_tids.end(), single.begin(), single.end(),
                            std::back_inserter(tids));
    }
    if (static_cast<std::int64_t>(tids.size()) >= min_support) {
      out.push_back(PatternResult{pattern, static_cast<std::int64_t>(tids.size()), Watts(), 0});
      lsds_extend(s, sensors, i + 1, tids, pattern, min_support, out);
    }
    pattern.pop_back();
  }
}

}  // namespace

std::string serialize_result(const MiningResult& result) {
  std::ostringstream os;
  for (const PatternResult& p : result.patterns) {
    nlohmann::json pattern = nlohmann::json::array();
    for (const SensorId& s : p.pattern) {
      pattern.push_back(s.str());
    }
    os << "{\"window\":" << result.window_id << ",\"pattern\":" << pattern.dump()
       << ",\"support\":" << p.support << ",\"utility\":" << p.utility.str() << "}\n";
  }
  return os.str();
}

MiningResult mine_frequent(const FpsTree& view, std::int64_t min_support,
                           std::int64_t window_id) {
  if (view.mode() != FpsTree::Mode::count) {
    throw Error("frequent mining needs a count-mode tree");
  }
  if (min_support < 1) {
    throw Error("min_support must be >= 1");
  }
  MiningResult result;
  result.window_id = window_id;
  result.patterns = grow_patterns(view, min_support);
  for (PatternResult& p : result.patterns) {
    p.window_id = window_id;
  }
  sort_patterns(result.patterns);
  return result;
}

MiningResult mine_frequent_lsds(const Lsds& s, std::int64_t min_support,
                                std::int64_t window_id) {
  if (min_support < 1) {
    throw Error("min_support must be >= 1");
  }
  MiningResult result;
  result.window_id = window_id;
  std::vector<SensorId> sensors = s.indexed_sensors();
  std::vector<SensorId> pattern;
  lsds_extend(s, sensors, 0, {}, pattern, min_support, result.patterns);
  for (PatternResult& p : result.patterns) {
    p.window_id = window_id;
  }
  sort_patterns(result.patterns);
  return result;
}

std::vector<PatternResult> hup_candidates(const FpsTree& view, const Lsds& s,
                                          const UtilityTable& u, Watts min_utility) {
  if (view.mode() != FpsTree::Mode::utility) {
    throw Error("high-utility mining needs a utility-mode tree");
  }
  if (min_utility.is_zero()) {
    // Pruning by twu keeps nothing out at threshold zero, and zero-utility
    // transactions are not represented in the tree; enumerate support>=1
    // patterns from the index and attach their exact twu.
    std::vector<SensorId> sensors = s.indexed_sensors();
    std::vector<SensorId> pattern;
    std::vector<PatternResult> out;
    lsds_extend(s, sensors, 0, {}, pattern, 1, out);
    for (PatternResult& p : out) {
      Watts twu;
      for (Tid tid : s.co_occurrence(p.pattern)) {
        twu += transaction_utility(*s.find_transaction(tid), u);
      }
      p.support = 0;
      p.utility = twu;
    }
    return out;
  }
  std::vector<PatternResult> out = grow_patterns(view, min_utility.micros());
  for (PatternResult& p : out) {
    p.utility = Watts::from_micros(p.support);
    p.support = 0;
  }
  return out;
}

MiningResult mine_hup(const FpsTree& view, const Lsds& s, const UtilityTable& u,
                      Watts min_utility, std::int64_t window_id) {
  if (min_utility < Watts()) {
    throw Error("min_utility must be non-negative");
  }
  MiningResult result;
  result.window_id = window_id;
  for (PatternResult& candidate : hup_candidates(view, s, u, min_utility)) {
    std::int64_t support = s.support(candidate.pattern);
    if (support == 0) {
      continue;
    }
    Watts utility = pattern_unit_utility(candidate.pattern, support, u);
    assert(candidate.utility >= utility);
    if (utility >= min_utility) {
      result.patterns.push_back(
          PatternResult{std::move(candidate.pattern), support, utility, window_id});
    }
  }
  sort_patterns(result.patterns);
  return result;
}

Watts window_total_utility(const Lsds& s, const UtilityTable& u) {
  Watts total;
  for (const EventTransaction& t : s.retained_transactions()) {
    total += transaction_utility(t, u);
  }
  return total;
}

MiningResult remine(const FpsTree& view, const Lsds& s, const UtilityTable& u,
                    const MiningRequest& request, std::int64_t window_id) {
  switch (request.mode) {
    case MiningMode::frequent: {
      if (request.threshold_kind == ThresholdKind::fraction_of_window_total) {
        throw Error("fraction thresholds apply to utility mining only");
      }
      return mine_frequent(view, request.min_support, window_id);
    }
    case MiningMode::high_utility: {
      Watts threshold = request.min_utility;
      if (request.threshold_kind == ThresholdKind::fraction_of_window_total) {
        threshold = window_total_utility(s, u).fraction_ceil(request.min_utility);
      }
      return mine_hup(view, s, u, threshold, window_id);
    }
  }
  throw Error("unknown mining mode");
}

}  // namespace fpstream
