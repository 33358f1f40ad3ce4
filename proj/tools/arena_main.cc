// Copyright 2026 The boop-co Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// boop-arena: agent-vs-agent series, mirror games, replays and tables.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "boop/arena.h"
#include "boop/config.h"
#include "boop/record.h"

namespace {

struct SeriesFlags {
  std::string config;
  std::string a = "mcts+SEP";
  std::string b = "vanilla";
  int games = 0;
  int budget_ms = 0;
  int iters = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  int jobs = 0;
  bool fixed_seats = false;
  std::string format = "text";
};

void AddSeriesOptions(CLI::App* cmd, SeriesFlags& f) {
  cmd->add_option("--config", f.config, "JSON config with weights, params and match");
  cmd->add_option("--games", f.games, "number of games")->check(CLI::PositiveNumber);
  auto* ms = cmd->add_option("--budget-ms", f.budget_ms, "wall-clock budget per move")
                 ->check(CLI::PositiveNumber);
  cmd->add_option("--iters", f.iters, "fixed iterations per move")
      ->check(CLI::PositiveNumber)
      ->excludes(ms);
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&f](std::uint64_t s) {
        f.seed = s;
        f.seed_set = true;
      },
      "base seed; game i uses seed + i");
  cmd->add_option("--out", f.out, "directory for result.json and game records");
  cmd->add_option("--jobs", f.jobs, "games played in parallel")->check(CLI::PositiveNumber);
  cmd->add_flag("--fixed-seats", f.fixed_seats, "agent A always plays first");
  cmd->add_option("--format", f.format, "table format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

boop::MatchSpec BuildSpec(const SeriesFlags& f, bool a_given, bool b_given) {
  boop::MatchSpec spec;
  if (!f.config.empty()) {
    spec = boop::MatchSpecFromJson(boop::ReadJsonFile(f.config), f.config);
  }
  auto with_name = [](const boop::AgentConfig& base, const std::string& name) {
    const auto parsed = boop::AgentConfig::FromName(name);
    if (!parsed) throw CLI::ValidationError("agent", "unknown agent kind '" + name + "'");
    boop::AgentConfig cfg = base;
    cfg.kind = parsed->kind;
    cfg.inject = parsed->inject;
    return cfg;
  };
  if (a_given || f.config.empty()) spec.agent_a = with_name(spec.agent_a, f.a);
  if (b_given || f.config.empty()) spec.agent_b = with_name(spec.agent_b, f.b);
  if (f.games > 0) spec.games = f.games;
  if (f.budget_ms > 0) spec.budget = boop::Budget::Millis(f.budget_ms);
  if (f.iters > 0) spec.budget = boop::Budget::Iterations(f.iters);
  if (f.seed_set) spec.base_seed = f.seed;
  if (f.jobs > 0) spec.jobs = f.jobs;
  if (f.fixed_seats) spec.seats = boop::SeatPolicy::kFixed;
  return spec;
}

void PrintTable(const std::vector<boop::TableRow>& rows, const std::string& format) {
  if (format == "csv") {
    std::cout << boop::RenderCsv(rows);
  } else if (format == "json") {
    std::cout << boop::RenderJson(rows).dump(2) << "\n";
  } else {
    std::cout << boop::RenderText(rows);
  }
}

int RunSeries(const boop::MatchSpec& spec, const SeriesFlags& f) {
  const auto result = boop::run_series(spec, [](int done, int total, const boop::GameRecord& r) {
    std::fprintf(stderr, "[%d/%d] game %d: %s wins in %d plies%s\n", done, total, r.game_index,
                 r.winner ? boop::ToString(*r.winner).c_str() : "-", r.plies,
                 r.anomaly ? " (ply cap)" : "");
  });
  if (!f.out.empty()) boop::SaveResult(result, f.out);
  PrintTable(boop::summarize({result}), f.format);
  std::fprintf(stderr, "mean move time: A %.1f ms, B %.1f ms\n", result.time_a.mean_ms(),
               result.time_b.mean_ms());
  if (result.aborted) {
    std::fprintf(stderr, "series aborted: %s\n", result.error.c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boop. agent arena"};
  app.require_subcommand(1);

  SeriesFlags match_flags;
  auto* match = app.add_subcommand("match", "play agent A against agent B");
  auto* opt_a = match->add_option("--a", match_flags.a, "agent A (vanilla, heuristic, mcts+SEP, ...)");
  auto* opt_b = match->add_option("--b", match_flags.b, "agent B");
  AddSeriesOptions(match, match_flags);

  SeriesFlags mirror_flags;
  mirror_flags.a = "vanilla";
  auto* mirror = app.add_subcommand("mirror", "play an agent against itself");
  auto* opt_agent = mirror->add_option("--agent", mirror_flags.a, "agent for both seats");
  AddSeriesOptions(mirror, mirror_flags);

  std::string replay_file;
  auto* replay = app.add_subcommand("replay", "replay a game record through the engine");
  replay->add_option("file", replay_file, "game record")->required()->check(CLI::ExistingFile);

  std::vector<std::string> table_files;
  std::string table_format = "text";
  auto* table = app.add_subcommand("table", "tabulate result.json files");
  table->add_option("results", table_files, "result.json files or series directories")
      ->required();
  table->add_option("--format", table_format)->check(CLI::IsMember({"text", "csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*match) {
      return RunSeries(BuildSpec(match_flags, opt_a->count() > 0, opt_b->count() > 0),
                       match_flags);
    }
    if (*mirror) {
      mirror_flags.b = mirror_flags.a;
      const bool given = opt_agent->count() > 0;
      boop::MatchSpec spec = BuildSpec(mirror_flags, given, given);
      if (!given) spec.agent_b = spec.agent_a;
      return RunSeries(spec, mirror_flags);
    }
    if (*replay) {
      const boop::GameRecord record = boop::LoadRecord(replay_file);
      const boop::GameState final_state = boop::ReplayRecord(record);
      std::cout << "replayed " << record.actions.size() << " actions, " << final_state.ply()
                << " plies; winner "
                << (record.winner ? boop::ToString(*record.winner) : std::string("none"))
                << (record.anomaly ? " (ply cap forfeit)" : "") << "\n";
      return 0;
    }
    if (*table) {
      std::vector<boop::MatchResult> results;
      for (const std::string& name : table_files) {
        std::filesystem::path path = name;
        if (std::filesystem::is_directory(path)) path /= "result.json";
        results.push_back(boop::ResultFromJson(boop::ReadJsonFile(path), path.string()));
      }
      PrintTable(boop::summarize(results), table_format);
      return 0;
    }
  } catch (const boop::ReplayError& e) {
    std::fprintf(stderr, "replay failed: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
