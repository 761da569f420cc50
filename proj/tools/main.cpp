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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fpstream/cli.hpp"

namespace {

using fpstream::MiningMode;
using fpstream::RunConfig;
using fpstream::Watts;

struct FlagValues {
  std::string mode = "freq";
  std::string min_utility = "0";
  std::string budget = "0";
};

void add_stream_flags(CLI::App* cmd, RunConfig* cfg, FlagValues* flags) {
  cmd->add_option("--batch-size", cfg->batch_size, "Transactions per batch")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--window-batches", cfg->window_batches, "Batches per window")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", flags->mode, "Mining mode: freq or hup")
      ->check(CLI::IsMember({"freq", "hup"}));
  cmd->add_option("--min-support", cfg->min_support, "Minimum support count (freq mode)");
  cmd->add_option("--min-utility", flags->min_utility,
                  "Minimum utility in watt-units (hup mode)");
  cmd->add_option("--utility-table", cfg->utility_table,
                  "Utility table CSV, or 'unit' for one watt per sensor");
  cmd->add_option("--input", cfg->input, "Event stream path, '-' for stdin");
}

int resolve_and_run(const RunConfig& cfg_in, const FlagValues& flags,
                    int (*command)(const RunConfig&, std::istream&, std::ostream&,
                                   std::ostream&)) {
  RunConfig cfg = cfg_in;
  cfg.mode = flags.mode == "hup" ? MiningMode::high_utility : MiningMode::frequent;
  try {
    cfg.min_utility = Watts::parse(flags.min_utility);
    cfg.budget = Watts::parse(flags.budget);
  } catch (const fpstream::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fpstream::kExitUsage;
  }
  if (cfg.input == "-") {
    return command(cfg, std::cin, std::cout, std::cerr);
  }
  std::ifstream in(cfg.input);
  if (!in) {
    std::cerr << "error: cannot open input '" << cfg.input << "'\n";
    return fpstream::kExitUsage;
  }
  return command(cfg, in, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window frequent and high-utility pattern mining over sensor event "
               "streams"};
  app.require_subcommand(1);

  RunConfig mine_cfg;
  FlagValues mine_flags;
  CLI::App* mine = app.add_subcommand("mine", "Mine a finite event stream window by window");
  add_stream_flags(mine, &mine_cfg, &mine_flags);

  RunConfig stream_cfg;
  FlagValues stream_flags;
  CLI::App* stream = app.add_subcommand(
      "stream", "Mine continuously, flushing each report; malformed lines are skipped");
  add_stream_flags(stream, &stream_cfg, &stream_flags);

  RunConfig anomaly_cfg;
  FlagValues anomaly_flags;
  anomaly_flags.mode = "hup";
  CLI::App* anomaly = app.add_subcommand(
      "report-anomaly", "Alert on high-utility patterns whose utility exceeds the budget");
  add_stream_flags(anomaly, &anomaly_cfg, &anomaly_flags);
  anomaly->add_option("--budget", anomaly_flags.budget, "Alert budget in watt-units")
      ->required();

  RunConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "Generate a deterministic synthetic event stream");
  gen->add_option("--seed", gen_cfg.seed, "PRNG seed")->required();
  gen->add_option("--sensors", gen_cfg.sensors, "Number of sensors")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--count", gen_cfg.count, "Number of transactions")->required();
  gen->add_option("--density", gen_cfg.density, "ON probability per sensor, in (0, 1]")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : fpstream::kExitUsage;
  }

  if (mine->parsed()) {
    return resolve_and_run(mine_cfg, mine_flags, fpstream::cmd_mine);
  }
  if (stream->parsed()) {
    return resolve_and_run(stream_cfg, stream_flags, fpstream::cmd_stream);
  }
  if (anomaly->parsed()) {
    return resolve_and_run(anomaly_cfg, anomaly_flags, fpstream::cmd_report_anomaly);
  }
  if (gen->parsed()) {
    return fpstream::cmd_gen(gen_cfg, std::cout, std::cerr);
  }
  return fpstream::kExitUsage;
}
