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

#include "gradmarket/circuit.h"

#include <gtest/gtest.h>

namespace gradmarket {
namespace {

TEST(CircuitTest, NormCircuitExamples) {
  const Circuit c = BuildNormCircuit(2, 2);
  EXPECT_EQ(c.num_mul(), 3u);
  const FieldElement valid[] = {1, 1};
  EXPECT_TRUE(EvalPlain(c, valid).output.is_zero());
  const FieldElement invalid[] = {2, 0};
  EXPECT_EQ(EvalPlain(c, invalid).output, FieldElement(6));
}

TEST(CircuitTest, ZeroVectorIsRejectedByTheProductFromOne) {
  const Circuit c = BuildNormCircuit(3, 1);
  const FieldElement zero[3] = {};
  EXPECT_EQ(EvalPlain(c, zero).output, -FieldElement::One());
  const Circuit accept = BuildNormCircuit(3, 1, ZeroNorm::kAccept);
  EXPECT_TRUE(EvalPlain(accept, zero).output.is_zero());
  EXPECT_EQ(accept.num_mul(), 3u + 1u);
}

TEST(CircuitTest, SingleMultiplication) {
  Circuit c(2);
  c.AddMul(c.AddInput(0), c.AddInput(1));
  const FieldElement in[] = {3, 4};
  const PlainEvaluation e = EvalPlain(c, in);
  EXPECT_EQ(e.output, FieldElement(12));
  EXPECT_EQ(e.trace.u, FieldVector{3});
  EXPECT_EQ(e.trace.v, FieldVector{4});
  EXPECT_EQ(e.trace.w, FieldVector{12});
}

TEST(CircuitTest, AdditionsOnlyHaveNoTrace) {
  Circuit c(3);
  const auto s = c.AddAdd(c.AddInput(0), c.AddInput(1));
  c.AddSub(s, c.AddInput(2));
  const FieldElement in[] = {5, 6, 7};
  const PlainEvaluation e = EvalPlain(c, in);
  EXPECT_EQ(c.num_mul(), 0u);
  EXPECT_TRUE(e.trace.w.empty());
  EXPECT_EQ(e.output, FieldElement(4));
}

TEST(CircuitTest, Errors) {
  const Circuit c = BuildNormCircuit(2, 3);
  const FieldElement one[] = {1};
  EXPECT_THROW(EvalPlain(c, one), std::invalid_argument);
  Circuit d(1);
  EXPECT_THROW(d.AddAdd(0, 0), std::invalid_argument);
  EXPECT_THROW(d.AddInput(1), std::invalid_argument);
  EXPECT_THROW(BuildNormCircuit(0, 3), std::invalid_argument);
  EXPECT_THROW(BuildNormCircuit(2, 0), std::invalid_argument);
}

// Every input with entries in [-4, 4], m <= 3, rho <= 20, in both forms,
// against plain integer arithmetic.
TEST(CircuitTest, ExhaustiveAgainstIntegerOracle) {
  for (int m = 1; m <= 3; ++m) {
    for (int rho = 1; rho <= 20; ++rho) {
      for (ZeroNorm zero : {ZeroNorm::kReject, ZeroNorm::kAccept}) {
        const Circuit c = BuildNormCircuit(m, rho, zero);
        const std::size_t expect_mul = m + rho - (zero == ZeroNorm::kReject ? 1 : 0);
        ASSERT_EQ(c.num_mul(), expect_mul);
        int total = 1;
        for (int k = 0; k < m; ++k) total *= 9;
        for (int code = 0; code < total; ++code) {
          FieldVector g(m);
          long sum = 0;
          int rest = code;
          for (int k = 0; k < m; ++k) {
            const int v = rest % 9 - 4;
            rest /= 9;
            g[k] = FieldElement::FromSigned(v);
            sum += v * v;
          }
          const PlainEvaluation e = EvalPlain(c, g);
          const bool in_ball = sum <= rho && (sum >= 1 || zero == ZeroNorm::kAccept);
          ASSERT_EQ(e.output.is_zero(), in_ball) << "m=" << m << " rho=" << rho << " sum=" << sum;
          ASSERT_EQ(e.trace.w.size(), expect_mul);
          for (std::size_t t = 0; t < e.trace.w.size(); ++t) {
            ASSERT_EQ(e.trace.w[t], e.trace.u[t] * e.trace.v[t]);
          }
        }
      }
    }
  }
}

TEST(CircuitTest, OutputIsLastMultiplication) {
  const Circuit c = BuildNormCircuit(4, 5);
  EXPECT_EQ(c.output(), c.mul_gates().back());
}

TEST(CircuitTest, IndexedInputsReadOnlyTheListedEntries) {
  const std::size_t idx[] = {1, 3};
  const Circuit c = BuildNormCircuit(idx, 5, 2, ZeroNorm::kAccept);
  const FieldElement in[] = {100, 1, 100, 1, 100};
  EXPECT_TRUE(EvalPlain(c, in).output.is_zero());
  EXPECT_EQ(c.input_arity(), 5u);
}

TEST(CircuitTest, JsonRoundTrip) {
  Circuit c = BuildNormCircuit(3, 4, ZeroNorm::kAccept);
  const std::string text = c.ToJson();
  EXPECT_NE(text.find("\"value\":\"4\""), std::string::npos);
  EXPECT_EQ(Circuit::FromJson(text), c);
  Circuit big(1);
  big.AddConst(-FieldElement::One());
  EXPECT_EQ(Circuit::FromJson(big.ToJson()), big);
  EXPECT_THROW(Circuit::FromJson(R"({"input_arity":1,"output":0,"gates":[{"kind":"pow"}]})"),
               std::invalid_argument);
  EXPECT_THROW(Circuit::FromJson(R"({"input_arity":1,"output":0,"gates":[{"kind":"add","a":0,"b":0}]})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace gradmarket
