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

#include "gradmarket/sim.h"

#include <algorithm>

#include <gtest/gtest.h>

namespace gradmarket {
namespace {

bool HasEvent(const SessionReport& r, const std::string& needle) {
  return std::any_of(r.events.begin(), r.events.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

SessionConfig WithDo(DoBehavior b, int id = 2) {
  SessionConfig c;
  MaliciousDo d;
  d.id = id;
  d.behavior = b;
  c.malicious_dos.push_back(d);
  return c;
}

SessionConfig WithServer(ServerBehavior b, int id = 3) {
  SessionConfig c;
  MaliciousServer s;
  s.id = id;
  s.behavior = b;
  c.malicious_servers.push_back(s);
  return c;
}

const SessionReport& Clean() {
  static const SessionReport r = RunSession(SessionConfig{});
  return r;
}

TEST(SimTest, CleanSession) {
  const SessionReport& r = Clean();
  ASSERT_TRUE(r.success) << r.failure;
  EXPECT_EQ(r.validity_set, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(r.m, 3u * 40u);
  EXPECT_EQ(r.m_validated, 40u);
  EXPECT_EQ(r.mult_gates, 40u + r.rho);
  ASSERT_TRUE(r.gradient_max_abs_error);
  EXPECT_LE(*r.gradient_max_abs_error, 0.25);
  EXPECT_EQ(r.word_count, r.expected_word_count);
  EXPECT_EQ(r.word_count, Contract::ExpectedWordCount(4, 1));
  EXPECT_EQ(r.balances.at("do.1"), 25u);
  EXPECT_EQ(r.aggregate_passing_servers, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.gradient.size(), 40u);
}

TEST(SimTest, RandomGradientIsRejected) {
  const SessionReport r = RunSession(WithDo(DoBehavior::kRandomGradient));
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.validity_set, (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(r.status.at("do.2"), "rejected_validation");
  EXPECT_FALSE(r.balances.contains("do.2"));
  EXPECT_EQ(r.balances.at("do.1"), 33u);
  EXPECT_TRUE(HasEvent(r, "do.2 failed validation"));
  EXPECT_LE(*r.gradient_max_abs_error, 0.25);
}

TEST(SimTest, RandomGradientPassesWithoutValidation) {
  SessionConfig c = WithDo(DoBehavior::kRandomGradient);
  c.validate = false;
  const SessionReport r = RunSession(c);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.validity_set.size(), 4u);
  EXPECT_EQ(r.mult_gates, 0u);
  EXPECT_EQ(r.word_count, Contract::ExpectedWordCount(4, 1, false));
  EXPECT_NE(r.gradient, Clean().gradient);
}

TEST(SimTest, NormAttackIsRejected) {
  const SessionReport r = RunSession(WithDo(DoBehavior::kNormAttack, 1));
  EXPECT_EQ(r.validity_set, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(r.status.at("do.1"), "rejected_validation");
}

TEST(SimTest, TamperedProofIsRejected) {
  const SessionReport r = RunSession(WithDo(DoBehavior::kTamperedProof, 4));
  EXPECT_EQ(r.validity_set, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(r.status.at("do.4"), "rejected_validation");
}

TEST(SimTest, BadShareIsCaughtByComplaint) {
  SessionConfig c = WithDo(DoBehavior::kBadShare, 3);
  c.malicious_dos[0].target_server = 2;
  const SessionReport r = RunSession(c);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.validity_set, (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(r.status.at("do.3"), "excluded_sharing");
  EXPECT_TRUE(HasEvent(r, "server.2 complained about do.3"));
  EXPECT_TRUE(HasEvent(r, "upheld"));
}

TEST(SimTest, FalseComplaintIsDismissed) {
  SessionConfig c = WithServer(ServerBehavior::kFalseComplaint, 4);
  c.malicious_servers[0].target_do = 1;
  const SessionReport r = RunSession(c);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.validity_set.size(), 4u);
  EXPECT_TRUE(HasEvent(r, "complaint by server.4 about do.1 dismissed"));
  EXPECT_EQ(r.gradient, Clean().gradient);
  EXPECT_EQ(r.word_count, Clean().word_count);
}

TEST(SimTest, OneCorruptServerChangesNothing) {
  const SessionReport r = RunSession(WithServer(ServerBehavior::kCorruptShares));
  ASSERT_TRUE(r.success);
  EXPECT_TRUE(r.within_corruption_budget);
  EXPECT_EQ(r.validity_set, Clean().validity_set);
  EXPECT_EQ(r.gradient, Clean().gradient);
  EXPECT_EQ(r.aggregate_digest, Clean().aggregate_digest);
  EXPECT_EQ(r.aggregate_passing_servers, (std::vector<int>{1, 2, 4, 5}));
}

TEST(SimTest, TwoCorruptServersAreOutsideTheBudget) {
  SessionConfig c = WithServer(ServerBehavior::kCorruptShares, 1);
  c.malicious_servers.push_back({2, ServerBehavior::kCorruptShares});
  const SessionReport r = RunSession(c);
  EXPECT_FALSE(r.within_corruption_budget);
  EXPECT_TRUE(HasEvent(r, "exceed the decoding radius"));
}

TEST(SimTest, PartialRegistrationTimesOut) {
  SessionConfig c;
  c.registered_owners = 2;
  const SessionReport r = RunSession(c);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.registered, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.validity_set, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.word_count, Contract::ExpectedWordCount(2, 1));
  EXPECT_EQ(r.gas_per_method.count("timeout"), 1u);
  EXPECT_EQ(r.balances.at("do.2"), 50u);
}

TEST(SimTest, ReportsAreDeterministic) {
  SessionConfig c = WithDo(DoBehavior::kRandomGradient);
  c.malicious_servers.push_back({5, ServerBehavior::kCorruptShares});
  const std::string a = RunSession(c).ToJson();
  EXPECT_EQ(a, RunSession(c).ToJson());
  c.seed = 2;
  EXPECT_NE(a, RunSession(c).ToJson());
}

TEST(SimTest, WordCountIgnoresModelSize) {
  SessionConfig c;
  c.layer_sizes = {4, 32, 1};  // four times the default parameter count
  const SessionReport r = RunSession(c);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.m, 4 * Clean().m);
  EXPECT_EQ(r.word_count, Clean().word_count);
}

TEST(SimTest, ValidatedIndices) {
  SessionConfig c;
  EXPECT_EQ(ValidatedIndices(c).size(), 32u + 8u);
  c.validation_range = ValidationRange::kAll;
  EXPECT_EQ(ValidatedIndices(c).size(), 120u);
  c.validation_range = ValidationRange::kGradientLayer;
  c.validation_layer = 1;
  const auto idx = ValidatedIndices(c);
  ASSERT_EQ(idx.size(), 8u);
  EXPECT_EQ(idx.front(), 96u);
}

TEST(SimTest, ShortTraining) {
  SessionConfig c;
  c.iterations = 4;
  const TrainingResult t = RunTraining(c);
  ASSERT_EQ(t.mse.size(), 4u);
  EXPECT_LT(t.mse.back(), t.initial_mse);
  EXPECT_EQ(t.validity_sizes, (std::vector<std::size_t>(4, 4)));
  EXPECT_EQ(t.last.iteration, 3);
  EXPECT_EQ(t.last.loss_curve, t.mse);
  const std::string csv = t.CurveCsv();
  EXPECT_EQ(csv.rfind("iteration,mse\n1,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(SimTest, GasComparison) {
  const GasComparison g = RunGasCompare(DefaultGasCompareConfig());
  EXPECT_EQ(g.m, 2400u);
  EXPECT_LE(g.ratio(), 0.10);
  EXPECT_EQ(g.offchain_words, Contract::ExpectedWordCount(4, 1));
  EXPECT_EQ(g.baseline_words, 2u + 2 + 4 + 4 * 1200 + 1200);
  EXPECT_NE(g.ToJson(true).find("\"per_method\""), std::string::npos);
}

}  // namespace
}  // namespace gradmarket
