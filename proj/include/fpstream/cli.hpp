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

#ifndef FPSTREAM_CLI_HPP
#define FPSTREAM_CLI_HPP

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fpstream/fpstree.hpp"
#include "fpstream/lsds.hpp"
#include "fpstream/miner.hpp"
#include "fpstream/model.hpp"

namespace fpstream {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // parse or config errors
inline constexpr int kExitUtility = 2;  // missing utility entries

struct RunConfig {
  std::size_t batch_size = 1;
  std::size_t window_batches = 1;
  MiningMode mode = MiningMode::frequent;
  std::int64_t min_support = 1;
  Watts min_utility;
  std::string utility_table;  // CSV path, or "unit" for the built-in unit table
  std::string input = "-";    // event stream path, "-" for standard input
  Watts budget;               // report-anomaly only
  // gen only:
  std::uint64_t seed = 0;
  std::size_t sensors = 0;
  std::size_t count = 0;
  double density = 0.0;
};

// Maintains the window structures over a batched transaction stream and
// mines one report per completed batch once the window is full. Ingestion
// is single-writer; reports for window n are always delivered before
// window n+1.
class WindowPipeline {
 public:
  using ReportFn = std::function<void(const MiningResult&)>;

  WindowPipeline(WindowConfig cfg, MiningMode mode, UtilityTable table, MiningRequest request,
                 ReportFn on_report);

  // Buffers the transaction; commits a batch (and possibly reports a
  // window) whenever batch_size transactions have arrived. Transaction ids
  // must strictly increase.
  void push(const EventTransaction& t);

  // Signals end of stream. A trailing partial batch is discarded: windows
  // report only on full batches.
  void finish();

  // Highest transaction id accepted so far; 0 before the first push.
  Tid last_tid() const { return last_tid_; }

  std::int64_t windows_reported() const { return windows_reported_; }
  const Lsds& lsds() const { return lsds_; }
  const FpsTree& tree() const { return tree_; }

 private:
  void commit_batch();

  WindowConfig cfg_;
  MiningMode mode_;
  UtilityTable table_;
  MiningRequest request_;
  ReportFn on_report_;
  Lsds lsds_;
  FpsTree tree_;
  std::vector<EventTransaction> pending_;
  BatchNo next_batch_no_ = 1;
  Tid last_tid_ = 0;
  std::int64_t windows_reported_ = 0;
};

// Loads cfg.utility_table ("unit" selects the built-in unit table).
UtilityTable load_utility_table(const std::string& source);

// Batch mining over a finite stream: one JSONL report block per completed
// window on `out`. Any malformed line aborts with a line-numbered
// diagnostic on `err` and exit 1; missing utility entries exit 2.
int cmd_mine(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

// Same reports as cmd_mine, but incremental: output is flushed after each
// report and malformed lines are skipped with a diagnostic instead of
// aborting.
int cmd_stream(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

// High-utility mining where each report line is an alert for a pattern
// whose utility exceeds cfg.budget:
//   {"window": <int>, "pattern": [...], "utility": <decimal>}
int cmd_report_anomaly(const RunConfig& cfg, std::istream& in, std::ostream& out,
                       std::ostream& err);

// Deterministic synthetic stream: cfg.count transactions over cfg.sensors
// sensors, each ON independently with probability cfg.density. Identical
// seeds produce byte-identical output.
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The generator behind cmd_gen, reusable in benchmarks and tests.
std::vector<EventTransaction> generate_stream(std::uint64_t seed, std::size_t sensors,
                                              std::size_t count, double density);

}  // namespace fpstream

#endif  // FPSTREAM_CLI_HPP
