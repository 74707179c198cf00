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

#include "gradmarket/polynomial.h"

#include <gtest/gtest.h>

#include "gradmarket/random.h"

namespace gradmarket {
namespace {

TEST(PolynomialTest, InterpolationExamples) {
  const InterpolationPoint constant[] = {{1, 5}, {2, 5}};
  EXPECT_EQ(Interpolate(constant), Polynomial::Constant(5));
  const InterpolationPoint line[] = {{1, 2}, {2, 4}, {3, 6}};
  EXPECT_EQ(Interpolate(line), Polynomial({0, 2}));
  const InterpolationPoint single[] = {{0, 42}};
  EXPECT_EQ(Interpolate(single), Polynomial::Constant(42));
}

TEST(PolynomialTest, DuplicateNodesThrow) {
  const InterpolationPoint dup[] = {{1, 2}, {1, 3}};
  EXPECT_THROW(Interpolate(dup), FieldError);
}

TEST(PolynomialTest, RandomRoundTrip) {
  RandomStream rng(1, "poly");
  for (int d = 0; d <= 64; d += 4) {
    const Polynomial p(rng.UniformFieldVector(d + 1));
    std::vector<InterpolationPoint> pts;
    for (int k = 0; k <= d; ++k) {
      const FieldElement x = rng.UniformField();
      pts.push_back({x, p.Evaluate(x)});
    }
    const Polynomial q = Interpolate(pts);
    EXPECT_EQ(q, p);
    EXPECT_LE(q.degree(), d);
  }
}

TEST(PolynomialTest, TrimAndDegree) {
  EXPECT_EQ(Polynomial({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(Polynomial({0, 0}).is_zero());
  EXPECT_EQ(Polynomial().degree(), -1);
}

TEST(PolynomialTest, DivModReconstructsDividend) {
  RandomStream rng(2, "poly");
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial a(rng.UniformFieldVector(12));
    const Polynomial b(rng.UniformFieldVector(5));
    const auto [quot, rem] = a.DivMod(b);
    EXPECT_EQ(quot * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
  }
  EXPECT_THROW(Polynomial({1}).DivMod(Polynomial()), FieldError);
}

TEST(PolynomialTest, VanishingPolynomialRoots) {
  const FieldVector roots = {1, 2, 5};
  const Polynomial v = VanishingPolynomial(roots);
  EXPECT_EQ(v.degree(), 3);
  for (auto r : roots) EXPECT_TRUE(v.Evaluate(r).is_zero());
  EXPECT_EQ(v.Evaluate(3), FieldElement(2) * FieldElement(1) * -FieldElement(2));
}

TEST(PolynomialTest, ConsecutiveNodeEvaluationMatchesLagrange) {
  RandomStream rng(3, "poly");
  for (std::size_t n : {1u, 2u, 7u, 30u}) {
    const Polynomial p(rng.UniformFieldVector(n));
    FieldVector values;
    for (std::size_t t = 1; t <= n; ++t) values.push_back(p.Evaluate(t));
    for (int trial = 0; trial < 5; ++trial) {
      const FieldElement x = rng.UniformField();
      EXPECT_EQ(EvaluateOnConsecutiveNodes(values, x), p.Evaluate(x));
    }
    EXPECT_EQ(EvaluateOnConsecutiveNodes(values, FieldElement(n)), values.back());
    EXPECT_EQ(EvaluateOnConsecutiveNodes(values, FieldElement::Zero()), p.Evaluate(0));
  }
}

TEST(PolynomialTest, ExtendConsecutiveContinuesThePolynomial) {
  RandomStream rng(4, "poly");
  const Polynomial p(rng.UniformFieldVector(9));
  FieldVector values;
  for (int t = 1; t <= 9; ++t) values.push_back(p.Evaluate(t));
  const FieldVector ext = ExtendConsecutive(values, 8);
  ASSERT_EQ(ext.size(), 8u);
  for (int k = 0; k < 8; ++k) EXPECT_EQ(ext[k], p.Evaluate(10 + k));
}

}  // namespace
}  // namespace gradmarket
