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

#include "fpstream/cli.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace fpstream {

WindowPipeline::WindowPipeline(WindowConfig cfg, MiningMode mode, UtilityTable table,
                               MiningRequest request, ReportFn on_report)
    : cfg_(cfg),
      mode_(mode),
      table_(std::move(table)),
      request_(request),
      on_report_(std::move(on_report)),
      lsds_(cfg),
      tree_(cfg, mode == MiningMode::frequent ? FpsTree::Mode::count : FpsTree::Mode::utility) {
  pending_.reserve(cfg_.transactions_per_batch);
}

void WindowPipeline::push(const EventTransaction& t) {
  if (t.tid() <= last_tid_) {
    throw Error("transaction id " + std::to_string(t.tid()) + " does not increase (last was " +
                std::to_string(last_tid_) + ")");
  }
  last_tid_ = t.tid();
  pending_.push_back(t);
  if (pending_.size() == cfg_.transactions_per_batch) {
    commit_batch();
  }
}

void WindowPipeline::finish() { pending_.clear(); }

void WindowPipeline::commit_batch() {
  Batch batch(next_batch_no_++, std::move(pending_));
  pending_.clear();
  pending_.reserve(cfg_.transactions_per_batch);

  lsds_.insert_batch(batch);
  tree_.begin_batch();
  for (const EventTransaction& t : batch.transactions()) {
    if (t.empty()) {
      continue;
    }
    std::int64_t weight = mode_ == MiningMode::frequent
                              ? 1
                              : transaction_utility(t, table_).micros();
    tree_.insert_transaction(t, weight);
  }

  if (lsds_.batch_count() == cfg_.batches_per_window && on_report_) {
    std::int64_t window_id = ++windows_reported_;
    on_report_(remine(tree_, lsds_, table_, request_, window_id));
  }
}

UtilityTable load_utility_table(const std::string& source) {
  if (source == "unit") {
    return UtilityTable::unit();
  }
  std::ifstream in(source);
  if (!in) {
    throw Error("cannot open utility table '" + source + "'");
  }
  return UtilityTable::load_csv(in);
}

namespace {

MiningRequest request_from(const RunConfig& cfg) {
  MiningRequest request;
  request.mode = cfg.mode;
  request.min_support = cfg.min_support;
  request.min_utility = cfg.min_utility;
  request.threshold_kind = ThresholdKind::absolute;
  return request;
}

void validate_common(const RunConfig& cfg) {
  if (cfg.batch_size < 1 || cfg.window_batches < 1) {
    throw Error("batch size and window batches must be >= 1");
  }
  if (cfg.mode == MiningMode::frequent && cfg.min_support < 1) {
    throw Error("min support must be >= 1");
  }
  if (cfg.mode == MiningMode::high_utility && cfg.utility_table.empty()) {
    throw Error("high-utility mode needs --utility-table");
  }
}

std::string serialize_alerts(const MiningResult& result, Watts budget) {
  std::ostringstream os;
  for (const PatternResult& p : result.patterns) {
    if (!(p.utility > budget)) {
      continue;
    }
    nlohmann::json pattern = nlohmann::json::array();
    for (const SensorId& s : p.pattern) {
      pattern.push_back(s.str());
    }
    os << "{\"window\":" << result.window_id << ",\"pattern\":" << pattern.dump()
       << ",\"utility\":" << p.utility.str() << "}\n";
  }
  return os.str();
}

enum class LineErrors { abort, skip };

// Shared driver for the three mining commands. Reports are written in
// window order; diagnostics go to err so the data stream stays clean.
int run_pipeline(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err,
                 LineErrors line_errors, bool flush_each,
                 const std::optional<Watts>& alert_budget) {
  try {
    validate_common(cfg);
    UtilityTable table = cfg.mode == MiningMode::high_utility
                             ? load_utility_table(cfg.utility_table)
                             : UtilityTable();

    WindowPipeline pipeline(
        WindowConfig(cfg.window_batches, cfg.batch_size), cfg.mode, table, request_from(cfg),
        [&](const MiningResult& result) {
          out << (alert_budget ? serialize_alerts(result, *alert_budget)
                               : serialize_result(result));
          if (flush_each) {
            out.flush();
          }
        });

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (line.empty()) {
        continue;
      }
      try {
        EventTransaction t = parse_transaction_line(line, line_no);
        if (t.tid() <= pipeline.last_tid()) {
          throw ParseError(line_no, "transaction id " + std::to_string(t.tid()) +
                                        " does not increase (last was " +
                                        std::to_string(pipeline.last_tid()) + ")");
        }
        pipeline.push(t);
      } catch (const ParseError& e) {
        if (line_errors == LineErrors::abort) {
          throw;
        }
        err << "skipping " << e.what() << "\n";
      }
    }
    pipeline.finish();
    return kExitOk;
  } catch (const MissingUtilityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUtility;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int cmd_mine(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return run_pipeline(cfg, in, out, err, LineErrors::abort, /*flush_each=*/false, std::nullopt);
}

int cmd_stream(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return run_pipeline(cfg, in, out, err, LineErrors::skip, /*flush_each=*/true, std::nullopt);
}

int cmd_report_anomaly(const RunConfig& cfg, std::istream& in, std::ostream& out,
                       std::ostream& err) {
  if (cfg.mode != MiningMode::high_utility) {
    err << "error: report-anomaly runs in high-utility mode only\n";
    return kExitUsage;
  }
  return run_pipeline(cfg, in, out, err, LineErrors::abort, /*flush_each=*/true, cfg.budget);
}

std::vector<EventTransaction> generate_stream(std::uint64_t seed, std::size_t sensors,
                                              std::size_t count, double density) {
  if (sensors < 1) {
    throw Error("sensor count must be >= 1");
  }
  if (!(density > 0.0) || density > 1.0) {
    throw Error("density must be in (0, 1]");
  }
  std::size_t width = std::to_string(sensors).size();
  std::vector<SensorId> universe;
  universe.reserve(sensors);
  for (std::size_t i = 1; i <= sensors; ++i) {
    std::string name = std::to_string(i);
    name.insert(0, width - name.size(), '0');
    universe.emplace_back("s" + name);
  }

  // Bits straight from the engine; distributions from <random> are not
  // portable across standard library implementations.
  std::mt19937_64 rng(seed);
  auto canonical = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  std::vector<EventTransaction> stream;
  stream.reserve(count);
  for (std::size_t t = 1; t <= count; ++t) {
    std::vector<SensorId> on;
    for (const SensorId& s : universe) {
      if (canonical() < density) {
        on.push_back(s);
      }
    }
    stream.emplace_back(static_cast<Tid>(t), std::move(on));
  }
  return stream;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    for (const EventTransaction& t : generate_stream(cfg.seed, cfg.sensors, cfg.count,
                                                     cfg.density)) {
      out << serialize_transaction(t) << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace fpstream
