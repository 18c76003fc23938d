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

#include "coopnav/config.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coopnav/error.h"
#include "gtest/gtest.h"

namespace coopnav {
namespace {

std::string ErrorOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, ParsesKeysCommentsAndBlanks) {
  const ScenarioConfig cfg = ParseScenario(
      "# header\n"
      "scenario.name = demo\n"
      "\n"
      "world.corridor_width = 2   # narrow\n"
      "robot.start = 1, 1, 0\n"
      "human.policy = minimal\n"
      "thresholds.gamma = 0.9\n");
  EXPECT_EQ(cfg.name, "demo");
  EXPECT_EQ(cfg.world.corridor_width, 2.0);
  EXPECT_EQ(cfg.robot.start.x, 1.0);
  EXPECT_EQ(cfg.robot.start.y, 1.0);
  EXPECT_EQ(cfg.human_policy, HumanPolicy::kMinimallyContributing);
  EXPECT_EQ(cfg.thresholds.gamma, 0.9);
}

TEST(ConfigTest, RejectsUnknownKeyWithLine) {
  EXPECT_EQ(ErrorOf([] { ParseScenario("world.length = 3\nworld.colour = 1\n"); }),
            "line 2: unknown key 'world.colour'");
}

TEST(ConfigTest, RejectsDuplicateKey) {
  EXPECT_EQ(ErrorOf([] {
              ParseScenario("robot.speed = 0.4\n# x\nrobot.speed = 0.5\n");
            }),
            "line 3: duplicate key 'robot.speed'");
}

TEST(ConfigTest, MissingEqualsIsAParseError) {
  try {
    ParseScenario("robot.speed 0.4\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(ConfigTest, BadValueNamesTheKey) {
  const std::string msg =
      ErrorOf([] { ParseScenario("robot.speed = fast\n"); });
  EXPECT_NE(msg.find("robot.speed"), std::string::npos) << msg;
}

TEST(ConfigTest, OverrideByFullKeyOrLeaf) {
  ScenarioConfig cfg;
  ApplyOverride(cfg, "thresholds.gamma", "0.5");
  EXPECT_EQ(cfg.thresholds.gamma, 0.5);
  ApplyOverride(cfg, "gamma", "0.7");
  EXPECT_EQ(cfg.thresholds.gamma, 0.7);
  EXPECT_EQ(ErrorOf([&] { ApplyOverride(cfg, "radius", "1"); }),
            "ambiguous key 'radius'");
  EXPECT_EQ(ErrorOf([&] { ApplyOverride(cfg, "nope", "1"); }),
            "unknown key 'nope'");
}

TEST(ConfigTest, SerializeRoundTripsEveryField) {
  ScenarioConfig cfg;
  cfg.name = "rt";
  cfg.world.blocks = {{-1, 1.8, 11, 2.2}, {4, 0, 5, 0.5}};
  cfg.robot.start = {0.1, 0.7, 0.3};
  cfg.thresholds.gamma = 0.1 + 0.2;  // not exactly representable in short form
  cfg.planner.w_separation = 12345.678;
  cfg.human_policy = HumanPolicy::kMinimallyContributing;
  cfg.seed = 99;
  const ScenarioConfig back = ParseScenario(SerializeScenario(cfg));
  EXPECT_EQ(ToKeyValues(back), ToKeyValues(cfg));
  EXPECT_EQ(back.thresholds.gamma, cfg.thresholds.gamma);
  EXPECT_EQ(FromKeyValues(ToKeyValues(cfg)).world.blocks.size(), 2u);
}

TEST(ConfigTest, SchemaIsClosedAndUnique) {
  std::vector<std::string> keys = SchemaKeys();
  EXPECT_EQ(keys.size(), ToKeyValues(ScenarioConfig{}).size());
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
  EXPECT_EQ(ErrorOf([] { FromKeyValues({{"bogus.key", "1"}}); }),
            "unknown key 'bogus.key'");
}

TEST(ConfigTest, FormatDoubleIsShortestExact) {
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(10), "10");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(FormatDouble(x)), x);
}

TEST(ConfigTest, DefaultsValidate) { EXPECT_NO_THROW(ScenarioConfig{}.Validate()); }

struct BadCase {
  const char* key;
  const char* value;
  const char* field;
};

TEST(ConfigTest, ValidationNamesTheField) {
  const BadCase cases[] = {
      {"world.corridor_width", "-1", "world.corridor_width"},
      {"world.length", "0", "world.length"},
      {"robot.radius", "0", "robot.radius"},
      {"human.speed", "-0.5", "human.speed"},
      {"sim.tick_dt", "0", "sim.tick_dt"},
      {"robot.start", "0, 9, 0", "robot.start"},
      {"facilitating.lateral_speed", "2", "facilitating.lateral_speed"},
      {"checkpoint.second", "9", "checkpoint"},
  };
  for (const BadCase& c : cases) {
    ScenarioConfig cfg;
    ApplyOverride(cfg, c.key, c.value);
    try {
      cfg.Validate();
      ADD_FAILURE() << c.key << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kValidation);
      EXPECT_NE(std::string(e.what()).find(c.field), std::string::npos)
          << e.what();
    }
  }
}

TEST(ConfigTest, LoadMissingFileIsIo) {
  try {
    LoadScenario("/nonexistent/x.conf");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ConfigTest, ShippedScenariosValidate) {
  for (const char* name : {"open_minimal", "open_facilitating", "narrow_minimal",
                           "narrow_facilitating", "disjoint_corridors"}) {
    const ScenarioConfig cfg = LoadScenario(
        std::string(COOPNAV_SCENARIO_DIR) + "/" + name + ".conf");
    EXPECT_NO_THROW(cfg.Validate()) << name;
    EXPECT_EQ(cfg.name, name);
  }
}

}  // namespace
}  // namespace coopnav
