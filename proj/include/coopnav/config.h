// Copyright 2026 The CoopNav Authors
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

#ifndef COOPNAV_CONFIG_H_
#define COOPNAV_CONFIG_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coopnav/sim.h"

namespace coopnav {

// Scenario files are flat `section.key = value` lines; `#` starts a comment.
// The key set is closed: unknown keys are rejected.
ScenarioConfig ParseScenario(std::string_view text);
ScenarioConfig LoadScenario(const std::string& path);

// Sets one field. `key` is either a full dotted key or an unambiguous leaf
// name ("gamma" for "thresholds.gamma"). Throws kValidation on unknown or
// ambiguous keys and malformed values.
void ApplyOverride(ScenarioConfig& cfg, std::string_view key,
                   std::string_view value);

// Every schema key with its value, full precision.
std::map<std::string, std::string> ToKeyValues(const ScenarioConfig& cfg);

// Inverse of ToKeyValues; missing keys keep their defaults.
ScenarioConfig FromKeyValues(const std::map<std::string, std::string>& kv);

std::string SerializeScenario(const ScenarioConfig& cfg);

std::vector<std::string> SchemaKeys();

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double v);

}  // namespace coopnav

#endif  // COOPNAV_CONFIG_H_
