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

#ifndef BOOP_CONFIG_H_
#define BOOP_CONFIG_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "boop/heuristic.h"
#include "boop/search.h"
#include "json.hpp"

namespace boop {

// Raised for malformed configuration or record documents. The message
// names the offending field path, e.g. "params.k: expected an integer".
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json ToJson(const HeuristicWeights& w);
Json ToJson(const Budget& b);
Json ToJson(const SearchParams& p);
Json ToJson(const AgentConfig& a);

// Missing keys keep the defaults already in `base`; unknown keys are errors.
HeuristicWeights WeightsFromJson(const Json& j, const std::string& path,
                                 HeuristicWeights base = {});
Budget BudgetFromJson(const Json& j, const std::string& path);
SearchParams ParamsFromJson(const Json& j, const std::string& path, SearchParams base = {});
// Accepts a bare name ("mcts+SEP") or an object with an "agent" key plus
// optional "seed", "params" and "weights".
AgentConfig AgentFromJson(const Json& j, const std::string& path, const AgentConfig& defaults);

// Parses text, reporting syntax errors with line and column.
Json ParseJsonText(const std::string& text, const std::string& source);
Json ReadJsonFile(const std::filesystem::path& path);

}  // namespace boop

#endif  // BOOP_CONFIG_H_
