// Copyright 2026 The gradmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gradmarket/config.h"

#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

namespace gradmarket {
namespace {

TEST(ConfigTest, EmptyObjectKeepsDefaults) {
  const SessionConfig c = ParseConfig("{}");
  EXPECT_EQ(c.layer_sizes, (std::vector<int>{4, 8, 1}));
  EXPECT_EQ(c.num_servers, 5);
  EXPECT_EQ(c.threshold, 1);
  EXPECT_EQ(c.scale_bits, 6);
  EXPECT_EQ(c.iterations, 30);
  EXPECT_EQ(c.gas, GasTable{});
  EXPECT_TRUE(c.validate);
}

TEST(ConfigTest, ParsesEveryField) {
  const SessionConfig c = ParseConfig(R"({
    "layer_sizes": [3, 5, 2], "num_data_owners": 6, "registered_owners": 4,
    "num_servers": 7, "threshold": 2, "rho": 99, "scale_bits": 8, "deposit": 60,
    "validate": false, "validation_range": "gradient_layer", "validation_layer": 1,
    "seed": 42, "iterations": 3,
    "gas_table": {"field_op": 3, "tx_base": 1},
    "adversary": {
      "malicious_dos": [{"id": 2, "behavior": "norm_attack", "factor": 3.5},
                        {"id": 5, "behavior": "bad_share", "target_server": 7}],
      "malicious_servers": [{"id": 1, "behavior": "false_complaint", "target_do": 3}]
    }})");
  EXPECT_EQ(c.layer_sizes, (std::vector<int>{3, 5, 2}));
  EXPECT_EQ(c.registered_owners, 4);
  EXPECT_EQ(c.rho, 99u);
  EXPECT_FALSE(c.validate);
  EXPECT_EQ(c.validation_range, ValidationRange::kGradientLayer);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.gas.field_op, 3u);
  EXPECT_EQ(c.gas.tx_base, 1u);
  EXPECT_EQ(c.gas.storage_word_write, 20000u);
  ASSERT_EQ(c.malicious_dos.size(), 2u);
  EXPECT_EQ(c.malicious_dos[0].behavior, DoBehavior::kNormAttack);
  EXPECT_DOUBLE_EQ(c.malicious_dos[0].factor, 3.5);
  EXPECT_EQ(c.malicious_dos[1].target_server, 7);
  ASSERT_EQ(c.malicious_servers.size(), 1u);
  EXPECT_EQ(c.malicious_servers[0].behavior, ServerBehavior::kFalseComplaint);
  EXPECT_EQ(c.malicious_servers[0].target_do, 3);
}

TEST(ConfigTest, RoundTrip) {
  SessionConfig c;
  c.layer_sizes = {2, 3, 3, 1};
  c.malicious_dos.push_back({3, DoBehavior::kTamperedProof});
  c.malicious_servers.push_back({2, ServerBehavior::kCorruptShares});
  c.learning_rate = 0.125;
  const std::string text = ConfigToJson(c);
  EXPECT_EQ(ConfigToJson(ParseConfig(text)), text);
}

TEST(ConfigTest, RejectsBadInput) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"unknown": 1})",
      R"({"gas_table": {"gas_price": 1}})",
      R"({"adversary": {"malicious_dos": [{"id": 1, "behavior": "lazy"}]}})",
      R"({"adversary": {"malicious_dos": [{"id": 9}]}})",
      R"({"adversary": {"malicious_dos": [{"id": 1, "behavior": "norm_attack", "factor": 1}]}})",
      R"({"adversary": {"malicious_dos": [{"id": 1, "behavior": "bad_share", "target_server": 6}]}})",
      R"({"adversary": {"malicious_servers": [{"id": 6}]}})",
      R"({"adversary": {"cheaters": []}})",
      R"({"layer_sizes": [4, 1]})",
      R"({"layer_sizes": [4, 0, 1]})",
      R"({"threshold": 0})",
      R"({"num_servers": 3, "threshold": 2})",
      R"({"scale_bits": 61})",
      R"({"registered_owners": 5})",
      R"({"iterations": 0})",
      R"({"validation_layer": 2})",
      R"({"validation_range": "some"})",
      R"({"seed": "one"})",
  };
  for (const char* text : bad) EXPECT_THROW(ParseConfig(text), ConfigError) << text;
}

TEST(ConfigTest, CorruptionBudget) {
  SessionConfig c;
  EXPECT_TRUE(c.WithinCorruptionBudget());
  c.malicious_servers = {{1}};
  EXPECT_TRUE(c.WithinCorruptionBudget());
  c.malicious_servers = {{1}, {2}};
  EXPECT_FALSE(c.WithinCorruptionBudget());
}

TEST(ConfigTest, GasCompareDefaults) {
  const SessionConfig c = DefaultGasCompareConfig();
  EXPECT_EQ(c.layer_sizes, (std::vector<int>{39, 20, 1}));
  EXPECT_EQ(ParameterCount(c.layer_sizes), 800u);
  EXPECT_EQ(EncryptedGradientLength(c.layer_sizes), 2400u);
}

TEST(ConfigTest, LoadConfigFromFile) {
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), ConfigError);
  const std::string path = ::testing::TempDir() + "config_test.json";
  std::ofstream(path) << R"({"seed": 9})";
  EXPECT_EQ(LoadConfig(path).seed, 9u);
  std::remove(path.c_str());
}

TEST(ConfigTest, ModelAndDatasetRoundTrip) {
  RandomStream rng(1, "config");
  const auto model = Mlp<double>::Random({3, 4, 2}, 1.0, rng);
  const auto back = ModelFromJson(ModelToJson(model));
  EXPECT_EQ(back.sizes, model.sizes);
  for (std::size_t l = 0; l < model.weights.size(); ++l) EXPECT_EQ(back.weights[l], model.weights[l]);
  Dataset<double> d{Matrix<double>(2, 3), Matrix<double>(2, 1)};
  d.x << 1, 2, 3, 4, 5, 6;
  d.y << 7, 8;
  const auto dd = DatasetFromJson(DatasetToJson(d));
  EXPECT_EQ(dd.x, d.x);
  EXPECT_EQ(dd.y, d.y);
  EXPECT_THROW(ModelFromJson(R"({"layer_sizes": [3, 4, 2], "weights": [[1]]})"), ConfigError);
  EXPECT_THROW(DatasetFromJson(R"({"input_dim": 2, "output_dim": 1, "x": [1], "y": [1]})"),
               ConfigError);
}

}  // namespace
}  // namespace gradmarket
