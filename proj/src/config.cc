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

#include "boop/config.h"

#include <fstream>
#include <set>
#include <sstream>

namespace boop {
namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw FormatError(path + ": " + what);
}

void RequireObject(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) Fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) Fail(path + "." + key, "unknown field");
  }
}

double GetNumber(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

std::int64_t GetInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::array<double, 3> GetTriple(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) Fail(path, "expected [all_small, mixed, all_large]");
  return {GetNumber(j[0], path + "[0]"), GetNumber(j[1], path + "[1]"),
          GetNumber(j[2], path + "[2]")};
}

std::pair<std::size_t, std::size_t> LineColumn(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json ToJson(const HeuristicWeights& w) {
  Json j;
  j["count"] = w.count;
  j["center"] = w.center;
  j["border"] = w.border;
  j["large_owned"] = w.large_owned;
  j["align2"] = w.align2;
  j["align3"] = w.align3;
  return j;
}

Json ToJson(const Budget& b) {
  Json j;
  if (b.mode == Budget::Mode::kIterations) {
    j["iterations"] = b.iterations;
  } else {
    j["ms"] = b.time.count();
  }
  return j;
}

Json ToJson(const SearchParams& p) {
  Json j;
  j["k"] = p.k;
  j["m"] = p.m;
  j["discount"] = p.discount;
  j["c_explore"] = p.c_explore;
  j["budget"] = ToJson(p.budget);
  j["playout_ply_cap"] = p.playout_ply_cap;
  return j;
}

Json ToJson(const AgentConfig& a) {
  Json j;
  j["agent"] = a.Name();
  j["seed"] = a.seed;
  j["params"] = ToJson(a.params);
  j["weights"] = ToJson(a.weights);
  return j;
}

HeuristicWeights WeightsFromJson(const Json& j, const std::string& path, HeuristicWeights w) {
  RequireObject(j, path, {"count", "center", "border", "large_owned", "align2", "align3"});
  if (j.contains("count")) w.count = GetNumber(j["count"], path + ".count");
  if (j.contains("center")) w.center = GetNumber(j["center"], path + ".center");
  if (j.contains("border")) w.border = GetNumber(j["border"], path + ".border");
  if (j.contains("large_owned")) w.large_owned = GetNumber(j["large_owned"], path + ".large_owned");
  if (j.contains("align2")) w.align2 = GetTriple(j["align2"], path + ".align2");
  if (j.contains("align3")) w.align3 = GetTriple(j["align3"], path + ".align3");
  try {
    w.Validate();
  } catch (const std::invalid_argument& e) {
    Fail(path, e.what());
  }
  return w;
}

Budget BudgetFromJson(const Json& j, const std::string& path) {
  RequireObject(j, path, {"ms", "iterations"});
  if (j.contains("ms") == j.contains("iterations")) {
    Fail(path, "expected exactly one of \"ms\" or \"iterations\"");
  }
  if (j.contains("ms")) return Budget::Millis(static_cast<int>(GetInt(j["ms"], path + ".ms")));
  return Budget::Iterations(static_cast<int>(GetInt(j["iterations"], path + ".iterations")));
}

SearchParams ParamsFromJson(const Json& j, const std::string& path, SearchParams p) {
  RequireObject(j, path, {"k", "m", "discount", "c_explore", "budget", "playout_ply_cap"});
  if (j.contains("k")) p.k = static_cast<int>(GetInt(j["k"], path + ".k"));
  if (j.contains("m")) p.m = static_cast<int>(GetInt(j["m"], path + ".m"));
  if (j.contains("discount")) p.discount = GetNumber(j["discount"], path + ".discount");
  if (j.contains("c_explore")) p.c_explore = GetNumber(j["c_explore"], path + ".c_explore");
  if (j.contains("budget")) p.budget = BudgetFromJson(j["budget"], path + ".budget");
  if (j.contains("playout_ply_cap")) {
    p.playout_ply_cap = static_cast<int>(GetInt(j["playout_ply_cap"], path + ".playout_ply_cap"));
  }
  try {
    p.Validate();
  } catch (const std::invalid_argument& e) {
    Fail(path, e.what());
  }
  return p;
}

AgentConfig AgentFromJson(const Json& j, const std::string& path, const AgentConfig& defaults) {
  const Json* name = &j;
  if (j.is_object()) {
    RequireObject(j, path, {"agent", "seed", "params", "weights"});
    if (!j.contains("agent")) Fail(path + ".agent", "missing");
    name = &j["agent"];
  }
  if (!name->is_string()) Fail(path, "expected an agent name or object");
  auto parsed = AgentConfig::FromName(name->get<std::string>());
  if (!parsed) Fail(path, "unknown agent kind '" + name->get<std::string>() + "'");
  AgentConfig cfg = defaults;
  cfg.kind = parsed->kind;
  cfg.inject = parsed->inject;
  if (j.is_object()) {
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
        Fail(path + ".seed", "expected an integer");
      }
      cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("params")) cfg.params = ParamsFromJson(j["params"], path + ".params", cfg.params);
    if (j.contains("weights")) {
      cfg.weights = WeightsFromJson(j["weights"], path + ".weights", cfg.weights);
    }
  }
  return cfg;
}

Json ParseJsonText(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": malformed JSON";
    throw FormatError(msg.str());
  }
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseJsonText(buf.str(), path.string());
}

}  // namespace boop
